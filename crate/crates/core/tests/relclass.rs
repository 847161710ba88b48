mod common;

use common::{brute_ext, RawModule};
use proptest::prelude::*;
use relhom::algebra::{Algebra, AlgebraRef, Subalgebra};
use relhom::exactla::{Field, Matrix};
use relhom::modcat::*;
use relhom::relclass::{AllowableClass, PdValue};

fn gf(p: u32) -> Field {
    Field::new(p).unwrap()
}

fn dual_numbers() -> AlgebraRef {
    Algebra::truncated_polynomial(gf(2), 2).unwrap()
}

fn a2() -> AlgebraRef {
    Algebra::a2(gf(2)).unwrap()
}

fn trivial(a: &AlgebraRef) -> Module {
    Module::simple(a, 0).unwrap()
}

fn augmentation(a: &AlgebraRef) -> Morphism {
    let reg = Module::regular(a.clone());
    let k = trivial(a);
    // 1 -> 1, x -> 0
    let m = Matrix::from_fn(a.field(), 1, a.dim(), |_, c| u32::from(c == 0));
    Morphism::new(reg, k, m).unwrap()
}

fn socle_inclusion(a: &AlgebraRef) -> Morphism {
    let reg = Module::regular(a.clone());
    let soc = Matrix::from_fn(a.field(), a.dim(), 1, |r, _| u32::from(r == a.dim() - 1));
    reg.submodule(&soc).unwrap().1
}

fn as_raw(m: &Module) -> RawModule {
    RawModule { dim: m.dim(), action: m.actions().to_vec() }
}

/// Every `dim(y) x dim(x)` matrix over GF(2) that is an A-linear section of `f`.
fn brute_force_sections(f: &Morphism) -> usize {
    let (x, y) = (f.source(), f.target());
    common::all_homs(&as_raw(y), &as_raw(x))
        .iter()
        .filter(|s| f.matrix().mul(s).is_identity())
        .count()
}

#[test]
fn epi_classes() {
    let a = dual_numbers();
    let split = AllowableClass::split(a.clone());
    let abs = AllowableClass::absolute(a.clone());
    let reg = Module::regular(a.clone());
    let id = Morphism::identity(&reg);
    for class in [&split, &abs] {
        assert!(class.is_epi(&id).unwrap());
        assert!(class.is_mono(&id).unwrap());
    }
    let eps = augmentation(&a);
    assert_eq!(brute_force_sections(&eps), 0);
    assert!(!split.is_epi(&eps).unwrap());
    assert!(abs.is_epi(&eps).unwrap());

    let soc = socle_inclusion(&a);
    let retractions = common::all_homs(&as_raw(soc.target()), &as_raw(soc.source()))
        .iter()
        .filter(|r| r.mul(soc.matrix()).is_identity())
        .count();
    assert_eq!(retractions, 0);
    assert!(!split.is_mono(&soc).unwrap());
    assert!(abs.is_mono(&soc).unwrap());
}

#[test]
fn split_monos_are_e_monic() {
    for a in [dual_numbers(), a2()] {
        let reg = Module::regular(a.clone());
        let s = Module::simple(&a, 0).unwrap();
        let sum = direct_sum(&a, &[reg.clone(), s.clone()]).unwrap();
        let classes = vec![
            AllowableClass::absolute(a.clone()),
            AllowableClass::split(a.clone()),
            AllowableClass::relative(Subalgebra::scalars(a.clone())),
            AllowableClass::relative(Subalgebra::whole(a.clone())),
        ];
        for c in &classes {
            assert!(c.is_mono(&sum.injections[0]).unwrap());
            assert!(c.is_mono(&sum.injections[1]).unwrap());
            assert!(c.is_epi(&sum.projections[0]).unwrap());
        }
    }
}

#[test]
fn projectivity() {
    let a = dual_numbers();
    let abs = AllowableClass::absolute(a.clone());
    let reg = Module::regular(a.clone());
    assert!(abs.is_projective(&reg).unwrap());
    let k = trivial(&a);
    assert!(!abs.is_projective(&k).unwrap());
    // oracle: A -> k has no A-linear section
    assert_eq!(brute_force_sections(&augmentation(&a)), 0);
    let rel_whole = AllowableClass::relative(Subalgebra::whole(a.clone()));
    assert!(rel_whole.is_projective(&k).unwrap());
    assert!(abs.is_injective(&reg).unwrap());
    assert!(!abs.is_injective(&k).unwrap());

    let b = a2();
    let abs = AllowableClass::absolute(b.clone());
    for p in Module::indecomposable_projectives(&b).unwrap() {
        assert!(abs.is_projective(&p).unwrap());
    }
    let s1 = Module::simple(&b, 0).unwrap();
    let s2 = Module::simple(&b, 1).unwrap();
    assert!(!abs.is_projective(&s1).unwrap());
    assert!(abs.is_projective(&s2).unwrap());
    // over A2, S(1) = D(e1 A) is injective and P(2) = S(2) is not
    assert!(abs.is_injective(&s1).unwrap());
    assert!(!abs.is_injective(&s2).unwrap());
}

#[test]
fn covers() {
    let a = dual_numbers();
    let abs = AllowableClass::absolute(a.clone());
    let zero = Module::zero(a.clone());
    let c0 = abs.cover(&zero).unwrap();
    assert_eq!(c0.source().dim(), 0);
    let k = trivial(&a);
    let c = abs.cover(&k).unwrap();
    assert_eq!(c.source().dim(), 2);
    assert!(c.is_surjective() && c.intertwines());
    let rel = AllowableClass::relative(Subalgebra::whole(a.clone()));
    assert!(rel.cover(&k).unwrap().is_identity());

    // relative to the scalars: the induced cover is A^{dim M}
    let scal = AllowableClass::relative(Subalgebra::scalars(a.clone()));
    let c = scal.cover(&k).unwrap();
    assert_eq!(c.source().dim(), 2);
    assert!(c.intertwines() && c.is_surjective());
    assert!(scal.is_projective(c.source()).unwrap());
    let e = scal.envelope(&k).unwrap();
    assert!(e.intertwines() && e.is_injective());
    assert_eq!(e.target().dim(), 2);

    let env = abs.envelope(&k).unwrap();
    assert!(env.intertwines() && env.is_injective());
    assert!(abs.is_injective(env.target()).unwrap());
}

#[test]
fn relative_cover_over_proper_subalgebra() {
    // k[x]/(x^3) relative to B = span{1, x^2}
    let a = Algebra::truncated_polynomial(gf(3), 3).unwrap();
    let b = Subalgebra::new(a.clone(), vec![vec![1, 0, 0], vec![0, 0, 1]]).unwrap();
    let class = AllowableClass::relative(b);
    let k = Module::simple(&a, 0).unwrap();
    let c = class.cover(&k).unwrap();
    assert!(c.intertwines() && c.is_surjective());
    assert!(class.is_epi(&c).unwrap());
    // A ⊗_B k = A / A x^2 has dimension 2
    assert_eq!(c.source().dim(), 2);
    let e = class.envelope(&k).unwrap();
    assert!(e.intertwines() && class.is_mono(&e).unwrap());
    let reg = Module::regular(a.clone());
    assert!(class.is_projective(&reg).unwrap());
    assert!(!class.is_projective(&k).unwrap());
}

#[test]
fn heller_classes() {
    let a = a2();
    let ps = Module::indecomposable_projectives(&a).unwrap();
    let heller = AllowableClass::heller(a.clone(), ps.clone()).unwrap();
    let s1 = Module::simple(&a, 0).unwrap();
    let c = heller.cover(&s1).unwrap();
    assert!(heller.is_epi(&c).unwrap());
    assert!(!heller.is_projective(&s1).unwrap());
    // with only P(2) as generator, S(1) is not covered
    let small = AllowableClass::heller(a.clone(), vec![ps[1].clone()]).unwrap();
    assert!(matches!(small.cover(&s1), Err(relhom::Error::NoCover)));
}

#[test]
fn resolutions() {
    let a = a2();
    let abs = AllowableClass::absolute(a.clone());
    let (p1, _) = Module::indecomposable_projective(&a, 0).unwrap();
    let (p2, _) = Module::indecomposable_projective(&a, 1).unwrap();
    let res = abs.resolution(&p1, 3).unwrap();
    assert_eq!(res.length(), Some(0));
    let s1 = Module::simple(&a, 0).unwrap();
    let res = abs.resolution(&s1, 3).unwrap();
    assert_eq!(res.length(), Some(1));
    assert!(find_isomorphism(&res.module(0), &p1).unwrap().is_found());
    assert!(find_isomorphism(&res.module(1), &p2).unwrap().is_found());

    let b = dual_numbers();
    let abs = AllowableClass::absolute(b.clone());
    let k = trivial(&b);
    let res = abs.resolution(&k, 4).unwrap();
    assert_eq!(res.stages(), 5);
    assert_eq!(res.stage_dims(), vec![2; 5]);
    for i in 1..=4 {
        assert!(find_isomorphism(&res.syzygy(i), &k).unwrap().is_found());
        let d = res.differential(i);
        assert!(d.intertwines());
        if i >= 2 {
            assert!(res.differential(i - 1).matrix().mul(d.matrix()).is_zero());
        }
    }
}

#[test]
fn ext_against_oracle() {
    let b = dual_numbers();
    let abs = AllowableClass::absolute(b.clone());
    let k = trivial(&b);
    let (res, diffs) = common::dual_numbers::periodic_resolution(7);
    let tk = common::dual_numbers::trivial();
    for n in 0..=4 {
        let oracle = brute_ext(&res, &diffs, &tk, n);
        assert_eq!(oracle, 1);
        assert_eq!(abs.ext(&k, &k, n).unwrap().dim, oracle);
    }
    let a = a2();
    let abs = AllowableClass::absolute(a.clone());
    let s1 = Module::simple(&a, 0).unwrap();
    let s2 = Module::simple(&a, 1).unwrap();
    let (res, diffs) = common::a2::resolution_s1();
    for n in 0..3 {
        let oracle = brute_ext(&res, &diffs, &common::a2::s2(), n);
        assert_eq!(abs.ext(&s1, &s2, n).unwrap().dim, oracle);
        let oracle = brute_ext(&res, &diffs, &common::a2::s1(), n);
        assert_eq!(abs.ext(&s1, &s1, n).unwrap().dim, oracle);
    }
    assert_eq!(abs.ext(&s1, &s2, 1).unwrap().dim, 1);
    let reg = Module::regular(a.clone());
    assert_eq!(abs.ext(&reg, &s2, 1).unwrap().dim, 0);
    assert_eq!(abs.ext(&s1, &s2, 0).unwrap().dim, hom_dim(&s1, &s2).unwrap());
}

#[test]
fn projective_dimensions() {
    let a = a2();
    let abs = AllowableClass::absolute(a.clone());
    let s1 = Module::simple(&a, 0).unwrap();
    assert_eq!(abs.projective_dimension(&s1, 8).unwrap(), PdValue::Finite(1));
    assert_eq!(abs.projective_dimension(&Module::regular(a.clone()), 8).unwrap(), PdValue::Finite(0));
    let b = dual_numbers();
    let abs = AllowableClass::absolute(b.clone());
    assert_eq!(abs.projective_dimension(&trivial(&b), 8).unwrap(), PdValue::AtLeast(9));
    let c2 = Algebra::cyclic_group_algebra(gf(2), 2).unwrap();
    let abs = AllowableClass::absolute(c2.clone());
    let triv = Module::one_dimensional(&c2, 64).unwrap().remove(0);
    assert_eq!(abs.projective_dimension(&triv, 8).unwrap(), PdValue::AtLeast(9));
    assert_eq!(abs.syzygy(&Module::regular(c2.clone())).unwrap().dim(), 0);
}

#[test]
fn ext_detects_projectivity_on_family() {
    // family: simples, projectives, regular over A2
    let a = a2();
    let abs = AllowableClass::absolute(a.clone());
    let mut family = Module::simples(&a).unwrap();
    family.extend(Module::indecomposable_projectives(&a).unwrap());
    family.push(Module::regular(a.clone()));
    for m in &family {
        let proj = abs.is_projective(m).unwrap();
        let ext_zero = family.iter().all(|t| abs.ext(m, t, 1).unwrap().dim == 0);
        assert_eq!(proj, ext_zero);
    }
}

#[test]
fn ext_maps_of_identity_are_isos() {
    let b = dual_numbers();
    let abs = AllowableClass::absolute(b.clone());
    let k = trivial(&b);
    for n in 1..=3 {
        let m = abs.ext_map(&Morphism::identity(&k), &k, n).unwrap();
        assert!(m.is_iso());
    }
    // the zero endomorphism of k induces zero on Ext
    let m = abs.ext_map(&Morphism::zero(&k, &k), &k, 1).unwrap();
    assert!(!m.is_iso());
}

fn random_surjection(a: &AlgebraRef, seeds: &[u32]) -> Morphism {
    let free = Module::free(a.clone(), 2);
    let n = free.dim();
    let f = a.field();
    let g = Matrix::from_fn(f, n, 1, |r, _| seeds[r % seeds.len()] % f.p());
    let span = free.generated_subspace(&g);
    let (_, inc) = free.submodule(&span).unwrap();
    cokernel(&inc).map
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn composites_and_sectile(which in 0usize..3, seeds in proptest::collection::vec(0u32..3, 8)) {
        let a = [dual_numbers(), a2(), Algebra::truncated_polynomial(gf(3), 3).unwrap()][which].clone();
        let classes = [
            AllowableClass::absolute(a.clone()),
            AllowableClass::split(a.clone()),
            AllowableClass::relative(Subalgebra::scalars(a.clone())),
        ];
        let f = random_surjection(&a, &seeds);
        let q = cokernel(&kernel(&f).map).map;
        for c in &classes {
            let g_epi = c.is_epi(&f).unwrap();
            let cover = c.cover(f.source()).unwrap();
            let comp = f.compose(&cover).unwrap();
            // composite of E-epis is E-epi
            if g_epi && c.is_epi(&cover).unwrap() {
                prop_assert!(c.is_epi(&comp).unwrap());
            }
            // sectile: g ∘ f E-epi implies g E-epi
            if c.is_epi(&comp).unwrap() {
                prop_assert!(g_epi);
            }
            prop_assert_eq!(c.is_epi(&q).unwrap(), g_epi);
        }
    }

    #[test]
    fn relative_agrees_with_heller_on_induced_family(which in 0usize..2, seeds in proptest::collection::vec(0u32..3, 8)) {
        let a = [dual_numbers(), a2()][which].clone();
        let rel = AllowableClass::relative(Subalgebra::scalars(a.clone()));
        let f = random_surjection(&a, &seeds);
        let gens = vec![rel.cover(f.target()).unwrap().source().clone(), Module::regular(a.clone())];
        let heller = AllowableClass::heller(a.clone(), gens).unwrap();
        prop_assert_eq!(rel.is_epi(&f).unwrap(), heller.is_epi(&f).unwrap());
    }

    #[test]
    fn direct_sums_of_sequences(which in 0usize..2, s1 in proptest::collection::vec(0u32..3, 8), s2 in proptest::collection::vec(0u32..3, 8)) {
        let a = [dual_numbers(), a2()][which].clone();
        let f = random_surjection(&a, &s1);
        let g = random_surjection(&a, &s2);
        for c in [AllowableClass::absolute(a.clone()), AllowableClass::split(a.clone())] {
            let both = c.is_epi(&f).unwrap() && c.is_epi(&g).unwrap();
            let zf = Morphism::zero(g.source(), f.target());
            let zg = Morphism::zero(f.source(), g.target());
            let sum = matrix_morphism(
                &[f.source().clone(), g.source().clone()],
                &[f.target().clone(), g.target().clone()],
                &[vec![f.clone(), zf], vec![zg, g.clone()]],
            ).unwrap();
            if both {
                prop_assert!(c.is_epi(&sum).unwrap());
            }
        }
    }
}
