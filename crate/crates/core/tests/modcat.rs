use proptest::prelude::*;
use relhom::algebra::{Algebra, AlgebraRef};
use relhom::exactla::{Field, Matrix};
use relhom::modcat::*;

fn gf(p: u32) -> Field {
    Field::new(p).unwrap()
}

fn dual_numbers() -> AlgebraRef {
    Algebra::truncated_polynomial(gf(2), 2).unwrap()
}

fn a2() -> AlgebraRef {
    Algebra::a2(gf(2)).unwrap()
}

/// All matrices `rows x cols` over GF(2) that intertwine the two actions.
fn brute_force_homs(m: &Module, n: &Module) -> usize {
    let (r, c) = (n.dim(), m.dim());
    let f = m.field();
    let mut count = 0;
    for code in 0u32..(1 << (r * c)) {
        let mat = Matrix::from_fn(f, r, c, |i, j| (code >> (i * c + j)) & 1);
        if (0..m.algebra().dim()).all(|b| mat.mul(m.action(b)) == n.action(b).mul(&mat)) {
            count += 1;
        }
    }
    count
}

fn socle_inclusion(a: &AlgebraRef) -> Morphism {
    let reg = Module::regular(a.clone());
    let soc = Matrix::from_fn(a.field(), a.dim(), 1, |r, _| u32::from(r == a.dim() - 1));
    reg.submodule(&soc).unwrap().1
}

#[test]
fn hom_space_examples() {
    let a = a2();
    let reg = Module::regular(a.clone());
    let zero = Module::zero(a.clone());
    assert!(hom_space(&reg, &zero).unwrap().is_empty());
    let p = Module::indecomposable_projectives(&a).unwrap();
    let s = Module::simples(&a).unwrap();
    assert_eq!(p[0].dim(), 2);
    assert_eq!(p[1].dim(), 1);
    for m in p.iter().chain(&s).chain([&reg]) {
        assert_eq!(hom_dim(&reg, m).unwrap(), m.dim());
    }
    let h = hom_dim(&p[0], &s[0]).unwrap();
    assert_eq!(h, 1);
    // the subspace of intertwiners has 2^h elements
    assert_eq!(brute_force_homs(&p[0], &s[0]), 1 << h);
    for x in p.iter().chain(&s) {
        for y in p.iter().chain(&s) {
            assert_eq!(brute_force_homs(x, y), 1 << hom_dim(x, y).unwrap());
        }
    }
}

#[test]
fn kernels_and_cokernels() {
    let a = dual_numbers();
    let reg = Module::regular(a.clone());
    assert_eq!(kernel(&Morphism::identity(&reg)).object.dim(), 0);
    let zero = Module::zero(a.clone());
    let c = cokernel(&Morphism::zero(&zero, &reg));
    assert_eq!(c.object, reg);

    let inc = socle_inclusion(&a);
    let q = cokernel(&inc);
    assert_eq!(q.object.dim(), 1);
    // oracle: complete the socle {x} by the basis vector 1; the class of 1 times x lies in the socle
    let x_action = q.object.action(1);
    assert!(x_action.is_zero());
    assert!(q.map.intertwines());
    assert!(image(&inc).object.dim() == 1);
}

#[test]
fn direct_sums_and_blocks() {
    let a = dual_numbers();
    let reg = Module::regular(a.clone());
    let single = direct_sum(&a, &[reg.clone()]).unwrap();
    assert_eq!(single.module, reg);
    assert!(single.injections[0].is_identity());
    let k = cokernel(&socle_inclusion(&a)).object;
    let s = direct_sum(&a, &[reg.clone(), k.clone(), reg.clone()]).unwrap();
    assert_eq!(s.module.dim(), 5);

    // shear map with e = f = socle inclusion, common target A
    let e = socle_inclusion(&a);
    let f = e.clone();
    let soc = e.source().clone();
    let shear = matrix_morphism(
        &[soc.clone(), soc.clone()],
        &[reg.clone(), soc.clone()],
        &[vec![e.clone(), f.clone()], vec![Morphism::zero(&soc, &soc), Morphism::identity(&soc)]],
    )
    .unwrap();
    assert!(shear.intertwines());
    assert_eq!(cokernel(&shear).object.dim(), 1);

    let bad = Morphism::identity(&reg);
    assert!(matrix_morphism(&[soc.clone()], &[reg.clone()], &[vec![bad]]).is_err());
}

#[test]
fn pushout_examples() {
    let a = a2();
    let reg = Module::regular(a.clone());
    let g = Morphism::identity(&reg);
    let po = pushout(&Morphism::identity(&reg), &g).unwrap();
    assert!(find_isomorphism(&po.object, &reg).unwrap().is_found());

    let (p2, _) = Module::indecomposable_projective(&a, 1).unwrap();
    let (p1, _) = Module::indecomposable_projective(&a, 0).unwrap();
    let rad = hom_space(&p2, &p1).unwrap();
    assert_eq!(rad.len(), 1);
    let inc = rad[0].clone();
    assert!(inc.is_injective());
    let po = pushout(&inc, &inc).unwrap();
    assert_eq!(po.object.dim(), 3);
    let s1 = Module::simple(&a, 0).unwrap();
    let target = direct_sum(&a, &[s1, p1.clone()]).unwrap().module;
    assert!(find_isomorphism(&po.object, &target).unwrap().is_found());
    assert_eq!(
        po.leg_y.matrix().mul(inc.matrix()),
        po.leg_z.matrix().mul(inc.matrix())
    );
    assert!(matches!(pushout(&inc, &Morphism::identity(&p1)), Err(relhom::Error::SourceMismatch)));
}

#[test]
fn pullback_examples() {
    let a = dual_numbers();
    let reg = Module::regular(a.clone());
    let id = Morphism::identity(&reg);
    let pb = pullback(&id, &id).unwrap();
    assert_eq!(pb.object.dim(), reg.dim());
    let q = cokernel(&socle_inclusion(&a));
    let pb = pullback(&q.map, &q.map).unwrap();
    assert!(pb.leg_y.is_surjective() && pb.leg_z.is_surjective());
    assert_eq!(pb.object.dim(), 3);
}

#[test]
fn isomorphism_search() {
    let a = a2();
    let reg = Module::regular(a.clone());
    assert!(find_isomorphism(&reg, &reg).unwrap().is_found());
    let s = Module::simple(&a, 0).unwrap();
    assert!(matches!(find_isomorphism(&reg, &s).unwrap(), IsoSearch::Impossible(_)));
    let ps = Module::indecomposable_projectives(&a).unwrap();
    let sum = direct_sum(&a, &ps).unwrap().module;
    let iso = find_isomorphism(&reg, &sum).unwrap();
    let g = iso.found().unwrap();
    assert!(g.matrix().is_invertible() && g.intertwines());
    let s2 = Module::simple(&a, 1).unwrap();
    assert!(matches!(find_isomorphism(&s, &s2).unwrap(), IsoSearch::Impossible(_)));
}

#[test]
fn duality() {
    let a = dual_numbers();
    let zero = Module::zero(a.clone());
    assert_eq!(zero.dual().dim(), 0);
    let reg = Module::regular(a.clone());
    let d = reg.dual();
    assert_eq!(d.dim(), 2);
    assert!(d.validate().is_ok());
    let dd = d.dual();
    assert_eq!(dd.rebase(&a).unwrap(), reg);
    // the dual of the regular module is free of rank one over the opposite algebra:
    // a surjection from the regular module onto it splits
    let op_reg = Module::regular(d.algebra().clone());
    let iso = find_isomorphism(&op_reg, &d).unwrap();
    assert!(iso.is_found());
    let inc = socle_inclusion(&a);
    let inc_d = inc.dual();
    assert!(inc_d.intertwines());
    assert!(inc_d.is_surjective());
}

#[test]
fn module_validation() {
    let a = dual_numbers();
    let f = a.field();
    // x acting as the identity violates x^2 = 0
    let bad = Module::new(a.clone(), 1, vec![Matrix::identity(f, 1), Matrix::identity(f, 1)]);
    assert!(bad.is_err());
    let ok = Module::new(a.clone(), 1, vec![Matrix::identity(f, 1), Matrix::zeros(f, 1, 1)]);
    assert!(ok.is_ok());
    let c2 = Algebra::cyclic_group_algebra(f, 2).unwrap();
    let chars = Module::one_dimensional(&c2, 1024).unwrap();
    assert_eq!(chars.len(), 1);
}

/// A random submodule of a free module, as a mono into it.
fn random_mono(a: &AlgebraRef, rank: usize, seeds: &[u32]) -> Morphism {
    let free = Module::free(a.clone(), rank);
    let f = a.field();
    let n = free.dim();
    let gens = Matrix::from_fn(f, n, 2, |r, c| seeds[(r + c * n) % seeds.len()] % f.p());
    let span = free.generated_subspace(&gens);
    free.submodule(&span).unwrap().1
}

fn qf_algebras() -> Vec<AlgebraRef> {
    vec![
        dual_numbers(),
        Algebra::truncated_polynomial(gf(3), 3).unwrap(),
        Algebra::cyclic_group_algebra(gf(2), 2).unwrap(),
        a2(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exactness_image_is_kernel_of_cokernel(which in 0usize..4, rank in 1usize..3, seeds in proptest::collection::vec(0u32..5, 12)) {
        let a = qf_algebras()[which].clone();
        let inc = random_mono(&a, rank, &seeds);
        let q = cokernel(&inc);
        prop_assert!(q.map.intertwines());
        let k = kernel(&q.map);
        let im = inc.matrix().image_basis();
        prop_assert_eq!(k.object.dim(), im.cols());
        prop_assert_eq!(k.map.matrix().hstack(&im).rank(), im.cols());
    }

    #[test]
    fn shearing_isomorphism(which in 0usize..4, rank in 1usize..3, seeds in proptest::collection::vec(0u32..5, 12)) {
        let a = qf_algebras()[which].clone();
        let f = random_mono(&a, rank, &seeds);
        let po = pushout(&f, &f).unwrap();
        prop_assert_eq!(po.object.dim(), 2 * f.target().dim() - f.source().dim());
        let c = cokernel(&f).object;
        let target = direct_sum(&a, &[f.target().clone(), c]).unwrap().module;
        prop_assert!(find_isomorphism(&po.object, &target).unwrap().is_found());
        prop_assert!(po.leg_y.intertwines() && po.leg_z.intertwines());
        prop_assert_eq!(po.leg_y.matrix().mul(f.matrix()), po.leg_z.matrix().mul(f.matrix()));
    }

    #[test]
    fn pullback_dimension_law(which in 0usize..4, seeds in proptest::collection::vec(0u32..5, 12)) {
        let a = qf_algebras()[which].clone();
        let f = random_mono(&a, 2, &seeds);
        let q = cokernel(&f).map;
        let pb = pullback(&q, &q).unwrap();
        // kernel oracle: dim = dim Y + dim Z - rank of (q, -q)
        let d = q.source().dim();
        let h = q.matrix().hstack(&q.matrix().neg());
        prop_assert_eq!(pb.object.dim(), 2 * d - h.rank());
    }
}
