use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relhom::algebra::{Algebra, AlgebraRef, Subalgebra};
use relhom::audit::*;
use relhom::exactla::{Field, Matrix};
use relhom::hocolim::{SimplicialModule, Tower};
use relhom::io::*;
use relhom::modcat::*;
use relhom::relclass::{AllowableClass, PdValue};
use relhom::stable::is_stable_equivalence;

fn gf(p: u32) -> Field {
    Field::new(p).unwrap()
}

fn a2() -> AlgebraRef {
    Algebra::a2(gf(2)).unwrap()
}

fn algebras() -> Vec<AlgebraRef> {
    vec![
        Algebra::truncated_polynomial(gf(2), 2).unwrap(),
        Algebra::truncated_polynomial(gf(3), 3).unwrap(),
        Algebra::cyclic_group_algebra(gf(2), 2).unwrap(),
        a2(),
    ]
}

fn iso(m: &Module, n: &Module) -> bool {
    find_isomorphism(m, n).unwrap().is_found()
}

#[test]
fn random_modules_have_requested_dimension() {
    for a in algebras() {
        for seed in 0..100 {
            let d = (seed % 6) as usize;
            let m = random_module(&a, d, seed).unwrap();
            assert_eq!(m.dim(), d);
            m.validate().unwrap();
        }
    }
}

#[test]
fn random_cofibrations_are_e_monos() {
    for a in algebras() {
        let class = AllowableClass::absolute(a.clone());
        for seed in 0..100u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = random_module_with(&a, (seed % 4) as usize, &mut rng).unwrap();
            let f = random_cofibration(&class, &x, &mut rng).unwrap();
            assert!(class.is_mono(&f).unwrap());
        }
    }
}

#[test]
fn random_weak_equivalences() {
    let a = Algebra::cyclic_group_algebra(gf(2), 2).unwrap();
    let class = AllowableClass::absolute(a.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let x = random_module_with(&a, 3, &mut rng).unwrap();
    assert!(random_weak_equivalence(&class, &x, 0, &mut rng).unwrap().is_identity());
    for _ in 0..20 {
        let w = random_weak_equivalence(&class, &x, 3, &mut rng).unwrap();
        assert!(w.is_injective());
        assert!(is_stable_equivalence(&class, &w).unwrap());
    }
}

#[test]
fn counterexample_over_a2() {
    let a = a2();
    let class = AllowableClass::absolute(a.clone());
    let b = canonical_counterexample(&class).unwrap().expect("A2 has an object of dimension one");
    let s1 = Module::simple(&a, 0).unwrap();
    let p = Module::indecomposable_projectives(&a).unwrap();
    assert!(iso(&b.x, &s1));
    assert_eq!(b.x_pd, PdValue::Finite(1));
    assert!(iso(b.cover.source(), &p[0]));
    assert!(iso(b.s.source(), &p[1]));
    assert!(iso(b.top_pushout(), &p[1]));
    let target = direct_sum(&a, &[s1, p[0].clone()]).unwrap().module;
    assert!(iso(b.bottom_pushout(), &target));
    assert!(bundle_shape_matches(&b).unwrap());
    assert!(!b.induced_is_stable_equivalence);
    assert_eq!(b.verdict(), "NOT stable equivalence");
    assert!(b.shearing.is_iso());
    assert!(b.obstruction.ext_x >= 1);
    assert_eq!(b.obstruction.ext_top, 0);
    assert!(b.obstruction.ext_bottom >= 1);
    assert!(!b.obstruction.induced_is_iso);
    assert!(b.verify().unwrap());
}

#[test]
fn no_counterexample_over_self_injective_or_split() {
    let d = Algebra::truncated_polynomial(gf(2), 2).unwrap();
    assert!(canonical_counterexample(&AllowableClass::absolute(d.clone())).unwrap().is_none());
    for a in algebras() {
        assert!(canonical_counterexample(&AllowableClass::split(a)).unwrap().is_none());
    }
}

#[test]
fn descent_from_higher_dimension() {
    // 0 -> 1 -> 2 with the length-two path killed: S(1) has projective dimension 2
    let q = relhom::algebra::Quiver::new(3, &[(0, 1, "a"), (1, 2, "b")]).unwrap();
    let rel = relhom::algebra::Relation::monomial(&["a", "b"]);
    let a = Algebra::from_bound_quiver(gf(2), &q, &[rel], 2).unwrap();
    let class = AllowableClass::absolute(a.clone());
    let b = canonical_counterexample(&class).unwrap().unwrap();
    assert_eq!(b.found_pd, 2);
    assert_eq!(b.x_pd, PdValue::Finite(1));
    assert!(!b.induced_is_stable_equivalence);
}

#[test]
fn audit_over_group_algebra_is_clean() {
    let a = Algebra::cyclic_group_algebra(gf(2), 2).unwrap();
    let class = AllowableClass::absolute(a);
    let r = weq2_audit(&class, 60, 11, true).unwrap();
    assert_eq!(r.violation_count(), 0);
    assert_eq!(r.verdict, "0 violations");
    assert_eq!(r.trials, 60);
}

#[test]
fn injected_audit_over_a2_reverifies_from_json() {
    let class = AllowableClass::absolute(a2());
    let r = weq2_audit(&class, 10, 3, true).unwrap();
    assert!(r.violation_count() >= 1);
    let text = r.to_json().unwrap();
    let back = AuditReport::from_json(&text).unwrap();
    assert_eq!(back, r);
    assert!(back.reverify_all().unwrap());
    for v in &back.violations {
        assert!(v.witness.reverify().unwrap());
    }
}

#[test]
fn audits_are_replayable() {
    let class = AllowableClass::absolute(Algebra::truncated_polynomial(gf(3), 2).unwrap());
    let r1 = weq2_audit(&class, 12, 99, false).unwrap();
    let r2 = weq2_audit(&class, 12, 99, false).unwrap();
    assert_eq!(r1, r2);
}

#[test]
fn tampered_witness_fails() {
    let class = AllowableClass::absolute(a2());
    let r = weq2_audit(&class, 1, 0, true).unwrap();
    let mut w = r.violations.last().unwrap().witness.clone();
    w.induced_is_weak_equivalence = true;
    assert!(!w.reverify().unwrap());
    let mut w = r.violations.last().unwrap().witness.clone();
    w.on_x[0][0] = 1 - w.on_x[0][0];
    assert!(!w.reverify().unwrap_or(false));
}

#[test]
fn zero_diagram_is_not_a_violation() {
    let a = Algebra::cyclic_group_algebra(gf(2), 2).unwrap();
    let class = AllowableClass::absolute(a.clone());
    let z = Module::zero(a);
    let id = Morphism::identity(&z);
    let span = Span { f: id.clone(), g: id.clone() };
    let d = Weq2Diagram { top: span.clone(), bottom: span, on_x: id.clone(), on_y: id.clone(), on_z: id };
    assert!(!d.check(&class).unwrap().is_violation());
}

#[test]
fn split_class_audits_vacuously() {
    for a in algebras() {
        let class = AllowableClass::split(a);
        let r = weq2_audit(&class, 10, 5, true).unwrap();
        assert_eq!(r.violation_count(), 0);
    }
}

#[test]
fn colimit_probes() {
    let qf = AllowableClass::absolute(Algebra::cyclic_group_algebra(gf(2), 2).unwrap());
    let r = colimit_projectivity_probe(&qf, ProbeShape::Pushout, 20, 1).unwrap();
    assert!(r.all_projective());
    let r = colimit_projectivity_probe(&qf, ProbeShape::Tower, 10, 1).unwrap();
    assert!(r.all_projective());

    let a = a2();
    let class = AllowableClass::absolute(a.clone());
    let r = colimit_projectivity_probe(&class, ProbeShape::Pushout, 5, 2).unwrap();
    let first = &r.instances[0];
    assert!(!first.projective);
    let target = direct_sum(&a, &[Module::simple(&a, 0).unwrap(), Module::indecomposable_projectives(&a).unwrap()[0].clone()])
        .unwrap()
        .module;
    assert!(iso(&first.colimit, &target));
    assert!(r.correlated());

    let r = colimit_projectivity_probe(&AllowableClass::split(a), ProbeShape::Pushout, 10, 3).unwrap();
    assert!(r.all_projective());
}

#[test]
fn dichotomy_is_consistent() {
    for a in algebras() {
        for class in [AllowableClass::absolute(a.clone()), AllowableClass::split(a.clone())] {
            let d = dichotomy(&class, 8, 4).unwrap();
            assert!(d.consistent(), "{d:?}");
        }
    }
    let d = dichotomy(&AllowableClass::absolute(a2()), 4, 4).unwrap();
    assert!(d.counterexample);
}

#[test]
fn algebra_json_round_trips() {
    for a in algebras() {
        let j = algebra_to_json(&a);
        let text = serde_json::to_string(&j).unwrap();
        let back = algebra_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert!(back.same_as(&a));
    }
    let text = r#"{"field":{"p":2},"quiver":{"vertices":1,"arrows":[[0,0,"x"]]},"relations":[["x","x"]],"nilpotency_bound":2}"#;
    let a = algebra_from_json(&serde_json::from_str(text).unwrap()).unwrap();
    assert_eq!(a.dim(), 2);
}

#[test]
fn module_morphism_class_round_trips() {
    let a = a2();
    let s = Module::simple(&a, 0).unwrap();
    let (p, cov) = Module::indecomposable_projective(&a, 0).unwrap();
    let _ = p;
    let j = module_to_json(&s, true);
    let back = module_from_json(&serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap(), &a).unwrap();
    assert_eq!(back, s);
    let m = morphism_to_json(&cov);
    let back = morphism_from_json(&m, &a).unwrap();
    assert_eq!(back.matrix(), cov.matrix());

    let other = Algebra::truncated_polynomial(gf(2), 3).unwrap();
    assert!(module_from_json(&j, &other).is_err());

    let sub = Subalgebra::scalars(a.clone());
    for c in [AllowableClass::absolute(a.clone()), AllowableClass::split(a.clone()), AllowableClass::relative(sub)] {
        let back = class_from_json(&class_to_json(&c), &a).unwrap();
        assert_eq!(back.name(), c.name());
    }
    let bad = ModuleJson { algebra_ref: None, dim: 1, action: vec![vec![vec![1]]] };
    assert!(module_from_json(&bad, &a).is_err());
}

#[test]
fn simplicial_and_tower_round_trips() {
    let a = Algebra::cyclic_group_algebra(gf(2), 2).unwrap();
    let class = AllowableClass::absolute(a.clone());
    let k = Module::one_dimensional(&a, 4).unwrap()[0].clone();
    let s = SimplicialModule::concentrated(&k);
    let back = simplicial_from_json(&simplicial_to_json(&s), &a).unwrap();
    assert_eq!(back.truncation(), s.truncation());

    let reg = Module::regular(a.clone());
    let inc = reg.submodule(&Matrix::from_fn(a.field(), 2, 1, |_, _| 1)).unwrap().1;
    let t = Tower::new(&class, vec![inc.source().clone(), reg], vec![inc]).unwrap();
    let back = tower_from_json(&tower_to_json(&t), &class).unwrap();
    assert_eq!(back.len(), t.len());
    assert_eq!(back.colimit().dim(), 2);
}

#[test]
fn random_diagrams_are_not_degenerate() {
    let a = Algebra::cyclic_group_algebra(gf(2), 2).unwrap();
    let class = AllowableClass::absolute(a);
    let mut nonprojective = 0;
    let mut padded = 0;
    for seed in 0..50u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_weq2_diagram(&class, AUDIT_MAX_DIM, &mut rng).unwrap();
        let c = d.check(&class).unwrap();
        if !class.is_projective(&c.bottom_pushout.object).unwrap() {
            nonprojective += 1;
        }
        if !d.on_y.is_iso() {
            padded += 1;
        }
    }
    assert!(nonprojective >= 10, "{nonprojective}");
    assert!(padded >= 10, "{padded}");
}

#[test]
fn bundle_serializes_and_reverifies() {
    let class = AllowableClass::absolute(a2());
    let b = canonical_counterexample(&class).unwrap().unwrap();
    let j = b.to_json().unwrap();
    let text = serde_json::to_string(&j).unwrap();
    let back: BundleJson = serde_json::from_str(&text).unwrap();
    assert_eq!(back, j);
    assert_eq!(back.x_pd, 1);
    assert_eq!(back.verdict, "NOT stable equivalence");
    assert!(back.diagram.reverify().unwrap());
    assert!(!back.diagram.induced_is_weak_equivalence);
}
