use lattice_core::expr::e8_gram;
use lattice_core::matrix::{det, mat_mul, transpose};
use lattice_core::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

fn lat(text: &str) -> GramLattice {
    parse_and_construct(text, true).unwrap()
}

/// Eigenvalue sign count from the characteristic polynomial (all roots real).
fn descartes_signature(g: &IntMatrix) -> (usize, usize) {
    // coefficients of det(x I - g) for 3x3
    assert_eq!(g.len(), 3);
    let tr = g[0][0] + g[1][1] + g[2][2];
    let m2 = g[0][0] * g[1][1] - g[0][1] * g[1][0] + g[0][0] * g[2][2] - g[0][2] * g[2][0]
        + g[1][1] * g[2][2]
        - g[1][2] * g[2][1];
    let d: i128 = det(g).try_into().unwrap();
    let changes = |c: &[i128]| {
        let nz: Vec<i128> = c.iter().copied().filter(|x| *x != 0).collect();
        nz.windows(2).filter(|w| (w[0] > 0) != (w[1] > 0)).count()
    };
    let pos = changes(&[1, -tr, m2, -d]);
    let neg = changes(&[-1, -tr, -m2, -d]);
    (pos, neg)
}

/// Elementary divisors from gcds of k x k minors.
fn determinantal_divisors(g: &IntMatrix) -> Vec<BigInt> {
    let n = g.len();
    let subsets = |k: usize| -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(i: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for j in i..n {
                cur.push(j);
                rec(j + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut out);
        out
    };
    let mut prev = BigInt::from(1);
    let mut out = Vec::new();
    for k in 1..=n {
        let mut d = BigInt::zero();
        for rows in subsets(k) {
            for cols in subsets(k) {
                let m: IntMatrix = rows
                    .iter()
                    .map(|&r| cols.iter().map(|&c| g[r][c]).collect())
                    .collect();
                d = d.gcd(&det(&m));
            }
        }
        out.push(&d / &prev);
        prev = d;
    }
    out.into_iter().filter(|x| *x != BigInt::from(1)).collect()
}

#[test]
fn inner_product_examples() {
    let l = lat("U + <-4>");
    assert_eq!(l.inner_product(&[1, 0, 0], &[0, 1, 0]), Ok(1));
    assert_eq!(l.inner_product(&[0, 0, 1], &[0, 0, 1]), Ok(-4));
    assert_eq!(l.inner_product(&[5, -3, 2], &[0, 0, 0]), Ok(0));
    let l23 = lat("U + <-46>");
    assert_eq!(l23.inner_product(&[-46, -23, 7], &[-46, -23, 7]), Ok(-138));
    assert!(matches!(
        l.inner_product(&[1, 0], &[1, 0, 0]),
        Err(LatticeError::DimensionMismatch { .. })
    ));
}

#[test]
fn signature_examples() {
    for k in 1..=60 {
        assert_eq!(GramLattice::sk(k).signature(), (1, 2));
    }
    assert_eq!(lat("E8(2)").signature(), (0, 8));
    let u11 = lat("U(11) + <-2>");
    assert_eq!(u11.signature(), descartes_signature(u11.gram()));
    assert_eq!(u11.signature(), (1, 2));
}

#[test]
fn discriminant_examples() {
    assert!(discriminant_group(&lat("U")).is_trivial());
    let g = discriminant_group(&lat("U + <-4>"));
    assert_eq!(g.cyclic_orders, determinantal_divisors(lat("U + <-4>").gram()));
    assert_eq!(g.cyclic_orders, vec![BigInt::from(4)]);
    let e = lat("E8(2)");
    let g = discriminant_group(&e);
    assert_eq!(g.cyclic_orders, determinantal_divisors(e.gram()));
    assert_eq!(g.two_rank_if_elementary(), Some(8));
}

#[test]
fn construct_examples() {
    assert_eq!(
        lat("U + <-4>").gram(),
        &vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, -4]]
    );
    assert_eq!(
        lat("U(11) + <-2>").gram(),
        &vec![vec![0, 11, 0], vec![11, 0, 0], vec![0, 0, -2]]
    );
    let e82 = lat("E8(2)");
    let e8 = e8_gram();
    for i in 0..8 {
        for j in 0..8 {
            assert_eq!(e82.gram()[i][j], 2 * e8[i][j]);
        }
    }
    assert_eq!(det(&e8), BigInt::from(1));
    assert_eq!(lat("U + E8 + E8 + <-2>").rank(), 19);
}

#[test]
fn isometry_examples() {
    let l23 = lat("U + <-46>");
    let c = vec![vec![25, 92, 460], vec![23, 81, 414], vec![-5, -18, -91]];
    assert!(is_isometry(&l23, &c));
    assert!(is_isometry(&l23, &lattice_core::matrix::identity(3)));
    let swap = vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]];
    assert!(!is_isometry(&lat("U + <-4>"), &swap));
}

#[test]
fn span_examples() {
    let s2 = lat("U + <-4>");
    let (d01, d02, d1) = (vec![0, 0, 1], vec![2, 0, -1], vec![-1, 1, 0]);
    let twice = vec![0, 0, 2];
    let s = span_and_index(&s2, &[twice, d02.clone(), d1.clone()]).unwrap();
    assert_eq!(s.index_in_ambient, Index::Finite(4.into()));
    let s = span_and_index(&s2, &[d01, d02, d1]).unwrap();
    assert_eq!(s.index_in_ambient, Index::Finite(2.into()));
    let s = span_and_index(&s2, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
    assert_eq!(s.index_in_ambient, Index::Finite(1.into()));
    let s = span_and_index(&s2, &[vec![1, 1, 0]]).unwrap();
    assert_eq!(s.index_in_ambient, Index::Infinite);
    assert_eq!(s.saturated_rank, 1);
}

#[test]
fn bounded_search_examples() {
    match isometric_bounded_search(&lat("U + <-2>"), &lat("U(2) + <-2>"), 10) {
        IsometryOutcome::Distinct { invariant } => assert!(invariant.contains("determinant")),
        other => panic!("{other:?}"),
    }
    // S_{2,2} = [delta01, delta02, delta1] inside U + <-4>
    let s2 = lat("U + <-4>");
    let s22 = s2
        .restrict(&[vec![0, 0, 1], vec![2, 0, -1], vec![-1, 1, 0]])
        .unwrap();
    let model = lat("<4> + <-2> + <-2>");
    match isometric_bounded_search(&s22, &model, 10) {
        IsometryOutcome::Isometric { witness } => {
            let lhs = mat_mul(&transpose(&witness), &mat_mul(model.gram(), &witness));
            assert_eq!(&lhs, s22.gram());
            assert_eq!(det(&witness).abs(), BigInt::from(1));
        }
        other => panic!("{other:?}"),
    }
    let l = lat("U + <-6>");
    assert_eq!(
        isometric_bounded_search(&l, &l, 10),
        IsometryOutcome::Isometric {
            witness: lattice_core::matrix::identity(3)
        }
    );
}

#[test]
fn known_isometry_classes_of_intermediate_lattices() {
    let s2 = lat("U + <-4>");
    let s24 = s2
        .restrict(&[vec![0, 0, 2], vec![2, 0, -1], vec![-1, 1, 0]])
        .unwrap();
    assert!(matches!(
        isometric_bounded_search(&s24, &lat("<16> + <-2> + <-2>"), 10),
        IsometryOutcome::Isometric { .. }
    ));
}
