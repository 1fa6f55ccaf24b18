use k3_invariants::*;
use lattice_core::matrix::inverse_rational;
use lattice_core::span::Index;
use lattice_core::{isometric_bounded_search, parse_and_construct, span_and_index, GramLattice, IsometryOutcome, LatticeVector};
use num_bigint::BigInt;
use proptest::prelude::*;

fn lat(s: &str) -> GramLattice {
    parse_and_construct(s, true).unwrap()
}

const D4: &str = "[[-2,1,0,0],[1,-2,1,1],[0,1,-2,0],[0,1,0,-2]]";

/// `a` from `|det| = 2^a`, after checking `2 G^-1` is integral.
fn two_rank_oracle(l: &GramLattice) -> Option<usize> {
    let inv = inverse_rational(l.gram())?;
    let two = num_rational::BigRational::from_integer(2.into());
    if inv.iter().flatten().any(|x| !(x * &two).is_integer()) {
        return None;
    }
    let mut d = l.determinant().magnitude().clone();
    let mut a = 0;
    while d > 1u32.into() {
        if &d % 2u32 != 0u32.into() {
            return None;
        }
        d /= 2u32;
        a += 1;
    }
    Some(a)
}

#[test]
fn two_elementary_table() {
    // (lattice, r, a, g, k) with g = (22 - r - a) / 2 and k = (r - a) / 2 worked by hand.
    let generic: [(String, usize, usize, usize, usize); 10] = [
        ("U".into(), 2, 0, 10, 1),
        ("U(2)".into(), 2, 2, 9, 0),
        ("<2>".into(), 1, 1, 10, 0),
        ("U + <-2>".into(), 3, 1, 9, 1),
        ("U + <-2> + <-2>".into(), 4, 2, 8, 1),
        ("U(2) + <-2>".into(), 3, 3, 8, 0),
        (format!("U + {D4}"), 6, 2, 7, 2),
        ("U + E8".into(), 10, 0, 6, 5),
        ("U + E8 + E8".into(), 18, 0, 2, 9),
        ("U + E8 + E8 + <-2>".into(), 19, 1, 1, 9),
    ];
    for (s, r, a, g, k) in &generic {
        let l = lat(s);
        assert_eq!(two_rank_oracle(&l), Some(*a), "{s}");
        let d = two_elementary_data(&l).unwrap();
        assert_eq!((d.r, d.a), (*r, *a), "{s}");
        assert_eq!(d.case, FixedLocusCase::Generic, "{s}");
        assert_eq!((d.g, d.k_curves), (Some(*g), Some(*k)), "{s}");
        assert!(g + k <= 11);
        let si = d.curve_self_intersections();
        assert_eq!(si[0], 2 * *g as i64 - 2);
        assert_eq!(si.len(), 1 + k);
        assert!(si[1..].iter().all(|&x| x == -2));
    }
}

#[test]
fn exceptional_two_elementary_lattices() {
    let l = lat("U + E8(2)");
    assert_eq!(two_rank_oracle(&l), Some(8));
    let d = two_elementary_data(&l).unwrap();
    assert_eq!((d.r, d.a, d.delta), (10, 8, false));
    assert_eq!(d.case, FixedLocusCase::ExceptionUE82);
    assert_eq!(d.curve_self_intersections(), vec![0, 0]);

    let l = lat("U(2) + E8(2)");
    assert_eq!(two_rank_oracle(&l), Some(10));
    let d = two_elementary_data(&l).unwrap();
    assert_eq!((d.r, d.a, d.delta), (10, 10, false));
    assert_eq!(d.case, FixedLocusCase::ExceptionU2E82);
    assert!(d.curve_self_intersections().is_empty());
    assert_eq!(root_sublattice_span(&l, 1).unwrap().status, RootSpanStatus::NoRootsByParity);

    // Same (r, a) with odd parity is generic.
    let d = two_elementary_data(&lat("U + E8 + <-2> + <-2> + <-2> + <-2> + <-2> + <-2> + <-2> + <-2>")).unwrap_err();
    assert!(matches!(d, K3Error::NotK3Type { .. }));
    let d = two_elementary_data(&lat("U + <-2> + <-2> + <-2> + <-2> + <-2> + <-2> + <-2> + <-2>")).unwrap();
    assert_eq!((d.r, d.a, d.delta), (10, 8, true));
    assert_eq!(d.case, FixedLocusCase::Generic);
}

#[test]
fn two_elementary_rejections() {
    assert!(matches!(two_elementary_data(&lat("U + <-6>")), Err(K3Error::NotTwoElementary)));
    assert!(matches!(two_elementary_data(&lat("E8")), Err(K3Error::NotHyperbolic)));
    let odd = parse_and_construct("U + <-1>", false).unwrap();
    assert!(matches!(two_elementary_data(&odd), Err(K3Error::NotEven)));
}

fn roots_in_box(l: &GramLattice, b: i128) -> Vec<LatticeVector> {
    let mut out = Vec::new();
    for x in -b..=b {
        for y in -b..=b {
            for z in -b..=b {
                if l.norm(&[x, y, z]) == -2 {
                    out.push(vec![x, y, z]);
                }
            }
        }
    }
    out
}

#[test]
fn root_span_of_s2_is_index_four() {
    let s2 = GramLattice::sk(2);
    let r = root_sublattice_span(&s2, 2).unwrap();
    assert_eq!(r.status, RootSpanStatus::Stable);
    let span = r.span.unwrap();
    assert_eq!(span.index_in_ambient, Index::Finite(BigInt::from(4)));
    let printed = span_and_index(&s2, &[vec![0, 0, 2], vec![2, 0, -1], vec![-1, 1, 0]]).unwrap();
    assert_eq!(span.basis, printed.basis);
    assert!(span.generators.iter().all(|g| s2.norm(g) == -2));
    for v in roots_in_box(&s2, 12) {
        assert!(span.contains(&v));
    }
}

#[test]
fn root_span_small_cases() {
    let r = root_sublattice_span(&lat("U + <-2>"), 1).unwrap();
    assert_eq!(r.span.unwrap().index_in_ambient, Index::Finite(BigInt::from(1)));
    let r = root_sublattice_span(&GramLattice::sk(7), 1).unwrap();
    assert_eq!(r.span.unwrap().index_in_ambient, Index::Finite(BigInt::from(2)));
    let r = root_sublattice_span(&lat("U(2) + <-4>"), 1).unwrap();
    assert_eq!(r.status, RootSpanStatus::NoRootsByParity);
    assert!(r.span.is_none());
    // Norms in 2Z but never -2: U(4) + <-6> only reaches -6 mod 8.
    let r = root_sublattice_span(&lat("U(4) + <-6>"), 1).unwrap();
    assert_eq!(r.status, RootSpanStatus::NoRootsUpToCap);
    assert!(r.span.is_none());
}

#[test]
fn intermediate_lattices_of_s2() {
    let s2 = GramLattice::sk(2);
    let sub = root_sublattice_span(&s2, 2).unwrap().span.unwrap();
    let all = intermediate_lattices(&s2, &sub).unwrap();
    assert_eq!(all.iter().map(|m| m.index).collect::<Vec<_>>(), vec![1, 2, 4]);
    let s22 = GramLattice::new(vec![vec![-4, 4, 0], vec![4, -4, 2], vec![0, 2, -2]]).unwrap();
    let s24 = GramLattice::new(vec![vec![-16, 8, 0], vec![8, -4, 2], vec![0, 2, -2]]).unwrap();
    for (m, want) in all[1..].iter().zip([s22, s24]) {
        assert!(matches!(
            isometric_bounded_search(&m.lattice, &want, 6),
            IsometryOutcome::Isometric { .. }
        ));
    }
    assert_eq!(all[0].lattice.gram(), s2.gram());
}

#[test]
fn intermediate_lattices_of_s7_and_trivial_quotient() {
    let s7 = GramLattice::sk(7);
    let sub = root_sublattice_span(&s7, 1).unwrap().span.unwrap();
    let all = intermediate_lattices(&s7, &sub).unwrap();
    assert_eq!(all.iter().map(|m| m.index).collect::<Vec<_>>(), vec![1, 2]);
    assert_eq!(all[0].lattice.determinant(), s7.determinant());

    let full = span_and_index(&s7, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
    let one = intermediate_lattices(&s7, &full).unwrap();
    assert_eq!(one.len(), 1);
    assert_eq!(one[0].index, 1);

    let line = span_and_index(&s7, &[vec![1, 0, 0]]).unwrap();
    assert!(matches!(intermediate_lattices(&s7, &line), Err(K3Error::InfiniteIndex)));
}

/// Number of subgroups of `Z/d1 + ... + Z/dn` by closing every subset under addition.
fn subgroup_count_brute(d: &[i128]) -> usize {
    let mut elems: Vec<Vec<i128>> = vec![vec![]];
    for &di in d {
        elems = elems
            .into_iter()
            .flat_map(|e| (0..di).map(move |x| [e.clone(), vec![x]].concat()))
            .collect();
    }
    let idx = |v: &[i128]| elems.iter().position(|e| e == v).unwrap();
    let n = elems.len();
    let add: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let s: Vec<i128> = elems[i].iter().zip(&elems[j]).zip(d).map(|((a, b), m)| (a + b) % m).collect();
                    idx(&s)
                })
                .collect()
        })
        .collect();
    let zero = idx(&vec![0; d.len()]);
    (0u32..1 << n)
        .filter(|&mask| {
            mask & (1 << zero) != 0
                && (0..n).all(|i| mask & (1 << i) == 0 || (0..n).all(|j| mask & (1 << j) == 0 || mask & (1 << add[i][j]) != 0))
        })
        .count()
}

/// Subgroups of `Z/m + Z/n`: the sum of `gcd(a, b)` over divisors `a | m`, `b | n`.
fn subgroup_count_gcd(m: i128, n: i128) -> usize {
    let divs = |x: i128| (1..=x).filter(move |d| x % d == 0);
    let gcd = |mut a: i128, mut b: i128| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    divs(m).flat_map(|a| divs(n).map(move |b| gcd(a, b) as usize)).sum()
}

#[test]
fn subgroup_oracles_agree() {
    assert_eq!(subgroup_count_brute(&[2, 2]), 5);
    assert_eq!(subgroup_count_gcd(2, 2), 5);
    assert_eq!(subgroup_count_brute(&[2, 2, 2]), 16);
    assert_eq!(subgroup_count_brute(&[4, 4]), subgroup_count_gcd(4, 4));
}

#[test]
fn embedding_rank_bound() {
    assert_eq!(embeds_in_lk3_rank_bound(&lat("U + <-4>")).unwrap(), EmbeddingVerdict::YesByRank);
    assert_eq!(embeds_in_lk3_rank_bound(&lat("U + E8 + E8 + <-2>")).unwrap(), EmbeddingVerdict::Unknown);
    assert_eq!(embeds_in_lk3_rank_bound(&lat("U + E8 + <-2>")).unwrap(), EmbeddingVerdict::YesByRank);
    assert_eq!(embeds_in_lk3_rank_bound(&lat("U + E8 + <-2> + <-2>")).unwrap(), EmbeddingVerdict::Unknown);
    assert!(embeds_in_lk3_rank_bound(&lat("E8")).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn intermediate_count_matches_subgroup_count(
        d in prop::collection::vec(1i128..=4, 3).prop_filter("order <= 16", |d| d.iter().product::<i128>() <= 16),
        k in 1i128..8,
    ) {
        let l = GramLattice::sk(k);
        let sub = span_and_index(&l, &[vec![d[0], 0, 0], vec![0, d[1], 0], vec![0, 0, d[2]]]).unwrap();
        let all = intermediate_lattices(&l, &sub).unwrap();
        let nontrivial: Vec<i128> = d.iter().copied().filter(|&x| x > 1).collect();
        prop_assert_eq!(all.len(), subgroup_count_brute(&nontrivial));
        if nontrivial.len() <= 2 {
            let m = nontrivial.first().copied().unwrap_or(1);
            let n = nontrivial.get(1).copied().unwrap_or(1);
            prop_assert_eq!(all.len(), subgroup_count_gcd(m, n));
        }
        for m in &all {
            prop_assert_eq!(m.lattice.determinant(), l.determinant() * BigInt::from(m.index * m.index));
        }
    }

    #[test]
    fn root_span_grows_with_the_box(k in 1i128..30, b in 1i128..5) {
        let l = GramLattice::sk(k);
        let small = roots_in_box(&l, b);
        let large = roots_in_box(&l, 2 * b);
        let r = root_sublattice_span(&l, 1).unwrap();
        let stable = r.span.unwrap();
        if !small.is_empty() {
            let s = span_and_index(&l, &large).unwrap();
            for v in &small {
                prop_assert!(s.contains(v));
            }
        }
        for v in &large {
            prop_assert!(stable.contains(v));
        }
    }
}
