use lattice_core::matrix::{det, integer_inverse, mat_mul};
use lattice_core::*;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn sym3() -> impl Strategy<Value = IntMatrix> {
    prop::array::uniform6(-6i128..=6).prop_filter_map("degenerate", |a| {
        let g = vec![
            vec![a[0], a[1], a[2]],
            vec![a[1], a[3], a[4]],
            vec![a[2], a[4], a[5]],
        ];
        (!det(&g).is_zero()).then_some(g)
    })
}

/// Isometries of U + <-2k> as words in reflections of three roots.
fn isometry_word(k: i128, word: &[u8]) -> IntMatrix {
    let l = GramLattice::sk(k);
    let roots = [vec![0, 0, 1], vec![k, 0, -1], vec![-1, 1, 0]];
    let mut m = lattice_core::matrix::identity(3);
    for &w in word {
        m = mat_mul(&m, &l.reflection(&roots[(w % 3) as usize]).unwrap());
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn signature_counts_rank(g in sym3()) {
        let l = GramLattice::new(g).unwrap();
        let (p, n) = l.signature();
        prop_assert_eq!(p + n, 3);
        // sign of det equals (-1)^n
        prop_assert_eq!(l.determinant().is_negative(), n % 2 == 1);
    }

    #[test]
    fn elementary_divisors_multiply_to_det(g in sym3()) {
        let l = GramLattice::new(g).unwrap();
        let grp = discriminant_group(&l);
        prop_assert_eq!(grp.order(), l.determinant().abs());
        for w in grp.cyclic_orders.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn isometries_form_a_group(
        k in 1i128..30,
        a in prop::collection::vec(0u8..3, 0..8),
        b in prop::collection::vec(0u8..3, 0..8),
    ) {
        let l = GramLattice::sk(k);
        let c = isometry_word(k, &a);
        let d = isometry_word(k, &b);
        prop_assert!(is_isometry(&l, &c));
        prop_assert!(is_isometry(&l, &mat_mul(&c, &d)));
        prop_assert!(is_isometry(&l, &integer_inverse(&c).unwrap()));
    }

    #[test]
    fn span_index_relation(g in sym3(), rows in prop::array::uniform9(-4i128..=4)) {
        let l = GramLattice::new(g).unwrap();
        let gens = vec![rows[0..3].to_vec(), rows[3..6].to_vec(), rows[6..9].to_vec()];
        let s = span_and_index(&l, &gens).unwrap();
        if let Index::Finite(idx) = &s.index_in_ambient {
            let sub = det(&s.gram(&l));
            prop_assert_eq!(sub, idx * idx * l.determinant());
        }
    }

    #[test]
    fn bilinearity(g in sym3(), x in prop::array::uniform3(-3i128..=3),
                   y in prop::array::uniform3(-3i128..=3), z in prop::array::uniform3(-3i128..=3)) {
        let l = GramLattice::new(g).unwrap();
        let xy: Vec<i128> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        prop_assert_eq!(l.ip(&xy, &z), l.ip(&x, &z) + l.ip(&y, &z));
        prop_assert_eq!(l.ip(&x, &y), l.ip(&y, &x));
    }

    #[test]
    fn print_parse_round_trip(d in -50i128..50, t in 1i128..20, pick in 0usize..3) {
        prop_assume!(d != 0);
        let named = ["U", "E8", "A2"][pick];
        let text = format!("{named}({t}) + <{d}>");
        let e = parse_lattice(&text).unwrap();
        prop_assert_eq!(parse_lattice(&e.to_string()).unwrap(), e.clone());
        prop_assert_eq!(e.to_string(), text);
    }
}

#[test]
fn exhaustive_small_bilinearity() {
    let l = GramLattice::sk(3);
    let r = -2i128..=2;
    for a in r.clone() {
        for b in r.clone() {
            for c in r.clone() {
                let x = [a, b, c];
                let e = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
                let s: i128 = (0..3).map(|i| x[i] * l.ip(&e[i], &[1, -1, 2])).sum();
                assert_eq!(l.ip(&x, &[1, -1, 2]), s);
            }
        }
    }
    let _ = BigInt::from(0);
}
