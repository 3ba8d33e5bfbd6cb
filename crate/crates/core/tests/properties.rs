use coho_core::archfield::{closure_of, group_closure};
use coho_core::autoinduct::{hecke_infinity_type, induced_pi_infinity, ramakrishnan_transfer};
use coho_core::cohomrep::{generic_cohomological_rep, gl_rho, matches_transfer, Place};
use coho_core::endotransfer::{
    arch_langlands_param, ell_param, so2n_obstruction, transferred_rep, CaseKind, TransferCase, TransferReport,
};
use coho_core::weightcalc::{
    base_change_lift, conjugate_weight, dual_weight, enumerate_strongly_pure, is_parallel, purity_weight,
    strong_purity, Weight as W,
};
use coho_core::{ArchField, BigWeight, GaloisElement, HalfInt, StrongPurity, Verdict, Weight, DEFAULT_CLOSURE_CAP};
use num_bigint::BigInt;
use proptest::prelude::*;

fn dominant(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(lo..=hi, n).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    })
}

/// Dominant component of length `n` with `c_i + c_{n+1-i} = w`.
fn self_dual(n: usize, w: i64, spread: i64) -> impl Strategy<Value = Vec<i64>> {
    let half = n / 2;
    prop::collection::vec(0..=spread, half).prop_map(move |mut top| {
        top.sort_unstable_by(|a, b| b.cmp(a));
        let lift = w.div_euclid(2) + w.rem_euclid(2);
        let top: Vec<i64> = top.into_iter().map(|x| x + lift).collect();
        let mut c = top.clone();
        if n % 2 == 1 {
            c.push(w / 2);
        }
        c.extend(top.iter().rev().map(|x| w - x));
        c
    })
}

fn pure_zero(n: usize) -> impl Strategy<Value = Vec<i64>> {
    self_dual(n, 0, 6)
}

fn permutation(d: usize) -> impl Strategy<Value = GaloisElement> {
    Just((0..d).collect::<Vec<usize>>()).prop_shuffle().prop_map(|p| GaloisElement::new(p).unwrap())
}

/// `S_3` acting on the embeddings of a non-Galois cubic with one real place.
fn cubic() -> ArchField {
    ArchField::general(3, vec![0, 2, 1], Some(vec![vec![1, 2, 0], vec![1, 0, 2]])).unwrap()
}

/// CM quartic with cyclic Galois group, conjugation `(0 1)(2 3)`.
fn cyclic_cm_quartic() -> ArchField {
    ArchField::general(4, vec![1, 0, 3, 2], Some(vec![vec![2, 3, 1, 0]])).unwrap()
}

fn fields() -> Vec<ArchField> {
    vec![
        ArchField::totally_real(1).unwrap(),
        ArchField::totally_real(3).unwrap(),
        ArchField::cm(2).unwrap(),
        ArchField::cm(4).unwrap(),
        cubic(),
        cyclic_cm_quartic(),
        ArchField::general(4, vec![0, 1, 2, 3], Some(vec![vec![1, 2, 3, 0], vec![1, 0, 2, 3]])).unwrap(),
    ]
}

#[test]
fn field_models() {
    for d in 1..=6 {
        let tr = ArchField::totally_real(d).unwrap();
        assert_eq!(tr.conjugation().fixed_points(), d);
        assert_eq!((tr.r1(), tr.r2()), (d, 0));
    }
    for d in [2, 4, 6] {
        let cm = ArchField::cm(d).unwrap();
        let c = cm.conjugation();
        assert_eq!(c.fixed_points(), 0);
        assert!(c.compose(c).is_identity());
        assert_eq!((cm.r1(), cm.r2()), (0, d / 2));
    }
    assert!(ArchField::cm(3).is_err());
    assert!(ArchField::general(3, vec![1, 2, 0], None).is_err());
    // conjugation outside the generated group
    assert!(ArchField::general(3, vec![0, 2, 1], Some(vec![vec![1, 2, 0]])).is_err());
}

#[test]
fn closure_is_a_group() {
    for f in fields() {
        let Some(gens) = f.galois_generators() else { continue };
        let g = group_closure(&f, DEFAULT_CLOSURE_CAP).unwrap();
        assert!(g.iter().any(GaloisElement::is_identity));
        for a in &g {
            assert!(g.binary_search(&a.inverse()).is_ok());
            for b in &g {
                assert!(g.binary_search(&a.compose(b)).is_ok());
            }
        }
        assert_eq!(closure_of(f.degree(), gens, DEFAULT_CLOSURE_CAP).unwrap(), g);
    }
    assert_eq!(group_closure(&cubic(), DEFAULT_CLOSURE_CAP).unwrap().len(), 6);
    assert_eq!(group_closure(&cyclic_cm_quartic(), DEFAULT_CLOSURE_CAP).unwrap().len(), 4);
}

#[test]
fn parallel_weights_strongly_pure_everywhere() {
    for f in fields() {
        for c in [vec![0i64], vec![3, -3], vec![2, 1, 0], vec![5, 2, -1, -4]] {
            let mu = W::parallel(f.degree(), c.clone()).unwrap();
            assert!(is_parallel(&mu));
            let r = strong_purity(&f, &mu).unwrap();
            assert!(r.is_pure, "{c:?}");
            assert_eq!(r.strongly_pure, Verdict::Yes, "{c:?} on {:?}", f.mode());
        }
    }
}

#[test]
fn cubic_witness() {
    let f = cubic();
    let mu = W::new(1, vec![vec![0i64], vec![1], vec![-1]]).unwrap();
    let r = strong_purity(&f, &mu).unwrap();
    assert!(r.is_pure);
    assert_eq!(r.purity_weight, Some(0));
    assert_eq!(r.strongly_pure, Verdict::No);
    let witness = r.witness.unwrap();
    assert!(purity_weight(&f, &witness.weight).unwrap().is_none());
    assert_eq!(conjugate_weight(&f, &witness.sigma, &mu).unwrap(), witness.weight);
}

#[test]
fn enumeration_matches_filter() {
    for f in [ArchField::totally_real(2).unwrap(), ArchField::cm(2).unwrap(), cubic()] {
        for w in [-1i64, 0, 1] {
            let found = enumerate_strongly_pure(&f, 2, 2, &w, 1 << 20).unwrap();
            let sp = StrongPurity::new(&f).unwrap();
            for mu in &found {
                assert_eq!(sp.verdict(mu).unwrap(), Verdict::Yes);
                assert_eq!(purity_weight(&f, mu).unwrap(), Some(w));
            }
            let mut expected = 0;
            let comps = coho_core::weightcalc::dominant_vectors::<i64>(2, 2);
            let mut idx = vec![0usize; f.degree()];
            'outer: loop {
                let mu = W::new(2, idx.iter().map(|&i| comps[i].clone()).collect()).unwrap();
                if sp.verdict(&mu).unwrap() == Verdict::Yes && purity_weight(&f, &mu).unwrap() == Some(w) {
                    expected += 1;
                }
                for slot in idx.iter_mut().rev() {
                    *slot += 1;
                    if *slot < comps.len() {
                        continue 'outer;
                    }
                    *slot = 0;
                }
                break;
            }
            assert_eq!(found.len(), expected);
        }
    }
}

#[test]
fn gl_rho_shape() {
    for n in 1..=9 {
        let rho = gl_rho::<i64>(n);
        assert_eq!(rho.len(), n);
        for i in 0..n {
            assert_eq!(rho[i].clone() + rho[n - 1 - i].clone(), HalfInt::zero());
        }
        for i in 1..n {
            assert_eq!(rho[i - 1].clone() - rho[i].clone(), HalfInt::from_int(1));
        }
    }
}

#[test]
fn scalar_instances_agree() {
    let comp = vec![7i64, 4, 0, -4, -7];
    let f = ArchField::totally_real(1).unwrap();
    let case = TransferCase::for_total_rank(CaseKind::Sp2n, 5).unwrap();
    let small = ell_param(case, &f, &W::parallel(1, comp.clone()).unwrap(), 0).unwrap();
    let narrow: Vec<i32> =
        ell_param(case, &f, &W::parallel(1, comp.iter().map(|&x| x as i32).collect()).unwrap(), 0).unwrap();
    let big: Vec<BigInt> =
        ell_param(case, &f, &BigWeight::parallel(1, comp.iter().map(|&x| BigInt::from(x)).collect()).unwrap(), 0)
            .unwrap();
    assert_eq!(small, vec![18, 10]);
    assert_eq!(narrow, vec![18, 10]);
    assert_eq!(big, small.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
}

#[test]
fn big_ramakrishnan() {
    let k1: BigInt = "100000000000000000000000000000001".parse().unwrap();
    let k2 = BigInt::from(4);
    let r = ramakrishnan_transfer(k1.clone(), k2.clone()).unwrap();
    let s = r.solution.unwrap();
    assert!(s.identities_hold && s.matches_cohomological && s.dominant && s.pure);
    assert_eq!(s.w, BigInt::from(2));
    let two = BigInt::from(2);
    assert_eq!(&two * &s.mu[0] + 3 - &s.w, &k1 + &k2 - 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn permutation_inverse_in_cyclic_closure(g in (1usize..=5).prop_flat_map(permutation)) {
        let inv = g.inverse();
        prop_assert!(g.compose(&inv).is_identity());
        prop_assert!(inv.compose(&g).is_identity());
        let closure = closure_of(g.degree(), std::slice::from_ref(&g), DEFAULT_CLOSURE_CAP).unwrap();
        prop_assert!(closure.binary_search(&g).is_ok());
        prop_assert!(closure.binary_search(&inv).is_ok());
    }

    #[test]
    fn strongly_pure_implies_pure(
        field_idx in 0usize..7,
        comps in prop::collection::vec(dominant(3, -3, 3), 4),
    ) {
        let f = &fields()[field_idx];
        let mu = W::new(3, comps[..f.degree()].to_vec()).unwrap();
        let r = strong_purity(f, &mu).unwrap();
        if r.strongly_pure == Verdict::Yes {
            prop_assert!(r.is_pure);
        }
        if !r.is_pure {
            prop_assert_eq!(r.strongly_pure, Verdict::No);
            prop_assert!(r.witness.is_some());
        }
    }

    #[test]
    fn galois_conjugates_of_strongly_pure_share_w(
        field_idx in 4usize..7,
        comp in dominant(2, -4, 4),
    ) {
        let f = &fields()[field_idx];
        let d = f.degree();
        let mu = W::parallel(d, comp).unwrap();
        if let Some(w0) = purity_weight(f, &mu).unwrap() {
            for sigma in group_closure(f, DEFAULT_CLOSURE_CAP).unwrap() {
                let conj = conjugate_weight(f, &sigma, &mu).unwrap();
                prop_assert_eq!(purity_weight(f, &conj).unwrap(), Some(w0));
            }
        }
    }

    #[test]
    fn cm_conjugate_swap_preserves_purity(
        w in -4i64..=4,
        a in dominant(3, -5, 5),
        b in dominant(3, -5, 5),
    ) {
        let f = ArchField::cm(4).unwrap();
        let bar = |c: &[i64]| -> Vec<i64> { c.iter().rev().map(|x| w - x).collect() };
        let mu = W::new(3, vec![a.clone(), bar(&a), b.clone(), bar(&b)]).unwrap();
        prop_assert_eq!(purity_weight(&f, &mu).unwrap(), Some(w));
        let swapped = conjugate_weight(&f, f.conjugation(), &mu).unwrap();
        prop_assert_eq!(purity_weight(&f, &swapped).unwrap(), Some(w));
        prop_assert_eq!(strong_purity(&f, &mu).unwrap().strongly_pure, Verdict::Yes);
    }

    #[test]
    fn dual_weight_laws(
        w in -4i64..=4,
        comps in prop::collection::vec(self_dual(4, 0, 5), 2),
    ) {
        let f = ArchField::totally_real(2).unwrap();
        let shifted: Vec<Vec<i64>> = comps.iter().map(|c| c.iter().map(|x| x + w).collect()).collect();
        let mu = W::new(4, shifted).unwrap();
        let dual = dual_weight(&mu);
        prop_assert!(dual.is_dominant());
        prop_assert_eq!(dual_weight(&dual), mu.clone());
        prop_assert_eq!(purity_weight(&f, &mu).unwrap(), Some(2 * w));
        prop_assert_eq!(purity_weight(&f, &dual).unwrap(), Some(-2 * w));
    }

    #[test]
    fn base_change_of_parallel_is_parallel(comp in self_dual(3, 2, 5), d in 1usize..=3, e in 1usize..=3) {
        let mu = W::parallel(d, comp).unwrap();
        let restriction: Vec<usize> = (0..d * e).map(|j| j % d).collect();
        let lifted = base_change_lift(&mu, &restriction).unwrap();
        prop_assert!(is_parallel(&lifted));
        let big = ArchField::totally_real(d * e).unwrap();
        prop_assert_eq!(purity_weight(&big, &lifted).unwrap(), Some(2));
    }

    #[test]
    fn sp2n_ells_even(comp in (1usize..=6).prop_flat_map(|n| pure_zero(2 * n + 1))) {
        let big_n = comp.len();
        let f = ArchField::totally_real(1).unwrap();
        let mu = W::parallel(1, comp).unwrap();
        let case = TransferCase::for_total_rank(CaseKind::Sp2n, big_n).unwrap();
        let ell = ell_param(case, &f, &mu, 0).unwrap();
        prop_assert!(ell.iter().all(|l| l % 2 == 0 && *l > 0));
        prop_assert!(ell.windows(2).all(|p| p[0] > p[1]));
    }

    #[test]
    fn so_odd_ells_odd(comp in (1usize..=6).prop_flat_map(|n| pure_zero(2 * n))) {
        let big_n = comp.len();
        let f = ArchField::totally_real(1).unwrap();
        let mu = W::parallel(1, comp).unwrap();
        let case = TransferCase::for_total_rank(CaseKind::SoOdd, big_n).unwrap();
        let ell = ell_param(case, &f, &mu, 0).unwrap();
        prop_assert!(ell.iter().all(|l| l % 2 == 1 && *l > 0));
        prop_assert!(ell.windows(2).all(|p| p[0] > p[1]));
        let obs = so2n_obstruction(&f, &mu, 0).unwrap();
        prop_assert!(obs.mismatch.iter().all(|&m| m == 1));
    }

    #[test]
    fn param_dimension_is_n(kind_idx in 0usize..4, comp in (1usize..=7).prop_flat_map(pure_zero)) {
        let kind = CaseKind::ALL[kind_idx];
        let big_n = comp.len();
        let Ok(case) = TransferCase::for_total_rank(kind, big_n) else {
            return Ok(());
        };
        let f = if kind == CaseKind::Unitary { ArchField::cm(2).unwrap() } else { ArchField::totally_real(1).unwrap() };
        let mu = W::parallel(f.degree(), comp).unwrap();
        let param = arch_langlands_param(case, &f, &mu, 0).unwrap();
        prop_assert_eq!(param.dimension(), big_n);
        let rep = transferred_rep(case, &f, &mu, 0).unwrap();
        prop_assert_eq!(rep.dimension(), big_n);
        prop_assert_eq!(rep.blocks.len(), param.summands.len());
        let report = TransferReport::compute(kind, &f, &mu, 0).unwrap();
        prop_assert_eq!(report.matched, kind != CaseKind::SoEven);
        let (_, j) = generic_cohomological_rep(&f, &mu, 0).unwrap();
        prop_assert_eq!(matches_transfer(&j, &rep).unwrap().matched, report.matched);
    }

    #[test]
    fn induction_paths_agree(comp in (1usize..=5).prop_flat_map(|n| pure_zero(2 * n))) {
        let n = comp.len() / 2;
        let mu = W::parallel(1, comp.clone()).unwrap();
        let f = hecke_infinity_type(&mu).unwrap().f;
        prop_assert_eq!(f.len(), n);
        prop_assert!(f.iter().all(|x| x % 2 == 1 && *x > 0));
        prop_assert!(f.windows(2).all(|p| p[0] > p[1]));
        let real = induced_pi_infinity(&mu, Place::Real).unwrap();
        let (_, j) = generic_cohomological_rep(&ArchField::totally_real(1).unwrap(), &mu, 0).unwrap();
        prop_assert_eq!(real, j);
        let cm_mu = W::parallel(2, comp).unwrap();
        let complex = induced_pi_infinity(&cm_mu, Place::Complex).unwrap();
        let (_, jc) = generic_cohomological_rep(&ArchField::cm(2).unwrap(), &cm_mu, 0).unwrap();
        prop_assert_eq!(complex, jc);
    }

    #[test]
    fn weight_json_roundtrip(comps in prop::collection::vec(dominant(3, -50, 50), 1..5)) {
        let mu: Weight = W::new(3, comps).unwrap();
        let s = serde_json::to_string(&mu).unwrap();
        let back: Weight = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, mu);
    }
}
