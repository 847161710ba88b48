//! Randomized and constructive verification of gluing (Weq 2) for homotopy pushouts:
//! seeded generators, Weq 2 audits with replayable witnesses, the canonical counterexample
//! built from an object of projective dimension one, and colimit projectivity probes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraRef;
use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::hocolim::{shearing_isomorphism, Tower};
use crate::io::{
    algebra_from_json, algebra_to_json, class_from_json, class_to_json, matrix_morphism_from_json, matrix_to_json,
    module_from_json, module_to_json, AlgebraJson, ClassJson, MatrixJson, ModuleJson,
};
use crate::modcat::{direct_sum, find_isomorphism, hom_space, kernel, pushout, Module, Morphism, Pushout};
use crate::relclass::{AllowableClass, PdValue};
use crate::stable::is_stable_equivalence;

pub const RETRIES: usize = 256;
pub const PD_BOUND: usize = 8;

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn sum(a: &AlgebraRef, parts: &[Module]) -> Result<Module> {
    Ok(direct_sum(a, parts)?.module)
}

/// A seeded random module of exactly `dim` dimensions, as a quotient of a free module.
pub fn random_module(a: &AlgebraRef, dim: usize, seed: u64) -> Result<Module> {
    random_module_with(a, dim, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn random_module_with(a: &AlgebraRef, dim: usize, rng: &mut impl Rng) -> Result<Module> {
    if dim == 0 {
        return Ok(Module::zero(a.clone()));
    }
    let fld = a.field();
    let p = fld.p();
    let t = dim.div_ceil(a.dim());
    let free = Module::free(a.clone(), t);
    let n = free.dim();
    let rad: Vec<Vec<u32>> = a.radical_basis().map(<[_]>::to_vec).unwrap_or_default();
    let mut sub = Matrix::zeros(fld, n, 0);
    for _ in 0..RETRIES {
        if n - sub.cols() == dim {
            let m = free.quotient(&sub)?.0;
            m.validate()?;
            return Ok(m);
        }
        let mut v: Vec<u32> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        let deep = rng.gen_range(0..=2usize);
        for _ in 0..deep.min(usize::from(!rad.is_empty()) * 2) {
            let r = &rad[rng.gen_range(0..rad.len())];
            v = free.combination(r).apply(&v);
        }
        let next = free.generated_subspace(&sub.hstack(&Matrix::column(fld, &v)));
        if n - next.cols() >= dim {
            sub = next;
        }
    }
    Err(Error::RetryExhausted(RETRIES))
}

/// A uniformly random element of `Hom_A(x, y)`.
pub fn random_map(x: &Module, y: &Module, rng: &mut impl Rng) -> Result<Morphism> {
    let p = x.field().p();
    let mut m = Matrix::zeros(x.field(), y.dim(), x.dim());
    for h in hom_space(x, y)? {
        m.add_scaled(h.matrix(), rng.gen_range(0..p));
    }
    Morphism::new(x.clone(), y.clone(), m)
}

/// An E-projective of dimension at most `max_dim` times the cover inflation: the cover source of a random module.
pub fn random_projective(class: &AllowableClass, max_dim: usize, rng: &mut impl Rng) -> Result<Module> {
    let d = rng.gen_range(0..=max_dim);
    let m = random_module_with(class.algebra(), d, rng)?;
    Ok(class.cover(&m)?.source().clone())
}

/// `(e; h): X -> E ⊕ W` followed by a shear automorphism `(u, w) ↦ (u, w + t u)` of the target,
/// where `e` is the canonical E-mono (or the identity) and `h`, `t` are random.
pub fn random_cofibration(class: &AllowableClass, x: &Module, rng: &mut impl Rng) -> Result<Morphism> {
    let a = class.algebra();
    for _ in 0..16 {
        let e = match class.envelope(x) {
            Ok(e) if rng.gen_bool(0.5) => e,
            _ => Morphism::identity(x),
        };
        let wd = rng.gen_range(0..=3);
        let w = random_module_with(a, wd, rng)?;
        let h = random_map(x, &w, rng)?;
        let t = random_map(e.target(), &w, rng)?;
        let tgt = sum(a, &[e.target().clone(), w.clone()])?;
        let low = h.matrix().add(&t.matrix().mul(e.matrix()));
        let f = Morphism::new(x.clone(), tgt, e.matrix().vstack(&low))?;
        if class.is_mono(&f)? {
            return Ok(f);
        }
    }
    Err(Error::RetryExhausted(16))
}

/// `X -> X ⊕ P`, `x ↦ (x + b a x, a x)`, a split inclusion of `X` into a padding by a random
/// E-projective `P` followed by a shear automorphism. Padding 0 gives the identity.
pub fn random_weak_equivalence(class: &AllowableClass, x: &Module, padding: usize, rng: &mut impl Rng) -> Result<Morphism> {
    if padding == 0 {
        return Ok(Morphism::identity(x));
    }
    let a = class.algebra();
    let p = random_projective(class, padding, rng)?;
    let av = random_map(x, &p, rng)?;
    let bv = random_map(&p, x, rng)?;
    let tgt = sum(a, &[x.clone(), p.clone()])?;
    let top = Matrix::identity(x.field(), x.dim()).add(&bv.matrix().mul(av.matrix()));
    Morphism::new(x.clone(), tgt, top.vstack(av.matrix()))
}

/// A span `Y <-f- X -g-> Z`; `f` is required to be an E-mono.
#[derive(Clone, Debug)]
pub struct Span {
    pub f: Morphism,
    pub g: Morphism,
}

impl Span {
    pub fn x(&self) -> &Module {
        self.f.source()
    }
}

/// Two spans with vertical maps `on_x`, `on_y`, `on_z` from `top` to `bottom`.
#[derive(Clone, Debug)]
pub struct Weq2Diagram {
    pub top: Span,
    pub bottom: Span,
    pub on_x: Morphism,
    pub on_y: Morphism,
    pub on_z: Morphism,
}

#[derive(Clone, Debug)]
pub struct Weq2Check {
    pub top_pushout: Pushout,
    pub bottom_pushout: Pushout,
    pub induced: Morphism,
    pub induced_is_weak_equivalence: bool,
}

impl Weq2Check {
    pub fn is_violation(&self) -> bool {
        !self.induced_is_weak_equivalence
    }
}

impl Weq2Diagram {
    /// Validates the hypotheses (commuting squares, cofibration legs, vertical weak
    /// equivalences) and computes the induced map of pushouts.
    pub fn check(&self, class: &AllowableClass) -> Result<Weq2Check> {
        let (t, b) = (&self.top, &self.bottom);
        if b.f.compose(&self.on_x)? != self.on_y.compose(&t.f)? || b.g.compose(&self.on_x)? != self.on_z.compose(&t.g)? {
            return Err(Error::NonCommuting("vertical maps do not commute with the spans".into()));
        }
        if !class.is_mono(&t.f)? || !class.is_mono(&b.f)? {
            return Err(Error::NotCofibration);
        }
        for v in [&self.on_x, &self.on_y, &self.on_z] {
            if !is_stable_equivalence(class, v)? {
                return Err(Error::Hypothesis("a vertical map is not a weak equivalence".into()));
            }
        }
        let top_pushout = pushout(&t.f, &t.g)?;
        let bottom_pushout = pushout(&b.f, &b.g)?;
        let induced = top_pushout.induced(&bottom_pushout, &self.on_y, &self.on_z)?;
        let induced_is_weak_equivalence = is_stable_equivalence(class, &induced)?;
        Ok(Weq2Check { top_pushout, bottom_pushout, induced, induced_is_weak_equivalence })
    }
}

/// `[[m, 0], [n, v]]: X ⊕ P -> M ⊕ Q`.
fn padded(m: &Morphism, n: &Matrix, v: &Morphism, src: &Module, tgt: &Module) -> Result<Morphism> {
    let fld = m.source().field();
    let mut mat = Matrix::zeros(fld, tgt.dim(), src.dim());
    mat.set_block(0, 0, m.matrix());
    mat.set_block(m.target().dim(), 0, n);
    mat.set_block(m.target().dim(), m.source().dim(), v.matrix());
    Morphism::new(src.clone(), tgt.clone(), mat)
}

/// `(id; a): M -> M ⊕ P` and the projection `M ⊕ P -> M`.
fn graph(m: &Module, a: &Morphism, tgt: &Module) -> Result<(Morphism, Morphism)> {
    let fld = m.field();
    let id = Matrix::identity(fld, m.dim());
    let inc = Morphism::new(m.clone(), tgt.clone(), id.vstack(a.matrix()))?;
    let proj = Morphism::new(tgt.clone(), m.clone(), id.hstack(&Matrix::zeros(fld, m.dim(), a.target().dim())))?;
    Ok((inc, proj))
}

/// A random span padded by E-projectives as `X ⊕ P -> Y ⊕ P ⊕ P'` and `X ⊕ P -> Z ⊕ P''`, related
/// to the original span by graph inclusions (or, with probability 1/2, by the projections back).
pub fn random_weq2_diagram(class: &AllowableClass, max_dim: usize, rng: &mut impl Rng) -> Result<Weq2Diagram> {
    let a = class.algebra();
    let fld = a.field();
    let xd = rng.gen_range(0..=max_dim);
    let x = random_module_with(a, xd, rng)?;
    let f = random_cofibration(class, &x, rng)?;
    let zd = rng.gen_range(0..=max_dim);
    let z = random_module_with(a, zd, rng)?;
    let g = random_map(&x, &z, rng)?;
    let y = f.target().clone();

    let px = random_projective(class, 2, rng)?;
    let py = random_projective(class, 2, rng)?;
    let pz = random_projective(class, 2, rng)?;
    let qy = sum(a, &[px.clone(), py.clone()])?;

    let ax = random_map(&x, &px, rng)?;
    let by = random_map(&y, &qy, rng)?;
    let cz = random_map(&z, &pz, rng)?;
    let r = random_map(&px, &py, rng)?;
    let v = Morphism::new(px.clone(), qy.clone(), Matrix::identity(fld, px.dim()).vstack(r.matrix()))?;
    let vg = random_map(&px, &pz, rng)?;

    let x2 = sum(a, &[x.clone(), px.clone()])?;
    let y2 = sum(a, &[y.clone(), qy.clone()])?;
    let z2 = sum(a, &[z.clone(), pz.clone()])?;
    let m = by.matrix().mul(f.matrix()).sub(&v.matrix().mul(ax.matrix()));
    let mg = cz.matrix().mul(g.matrix()).sub(&vg.matrix().mul(ax.matrix()));
    let f2 = padded(&f, &m, &v, &x2, &y2)?;
    let g2 = padded(&g, &mg, &vg, &x2, &z2)?;

    let (ix, px_) = graph(&x, &ax, &x2)?;
    let (iy, py_) = graph(&y, &by, &y2)?;
    let (iz, pz_) = graph(&z, &cz, &z2)?;
    let small = Span { f, g };
    let big = Span { f: f2, g: g2 };
    Ok(if rng.gen_bool(0.5) {
        Weq2Diagram { top: small, bottom: big, on_x: ix, on_y: iy, on_z: iz }
    } else {
        Weq2Diagram { top: big, bottom: small, on_x: px_, on_y: py_, on_z: pz_ }
    })
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SpanJson {
    pub x: ModuleJson,
    pub y: ModuleJson,
    pub z: ModuleJson,
    pub f: MatrixJson,
    pub g: MatrixJson,
}

/// A self-contained serialized Weq 2 diagram with the recorded outcome.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Weq2Witness {
    pub algebra: AlgebraJson,
    pub class: ClassJson,
    pub top: SpanJson,
    pub bottom: SpanJson,
    pub on_x: MatrixJson,
    pub on_y: MatrixJson,
    pub on_z: MatrixJson,
    pub induced: MatrixJson,
    pub induced_is_weak_equivalence: bool,
}

fn span_to_json(s: &Span) -> SpanJson {
    SpanJson {
        x: module_to_json(s.f.source(), false),
        y: module_to_json(s.f.target(), false),
        z: module_to_json(s.g.target(), false),
        f: matrix_to_json(s.f.matrix()),
        g: matrix_to_json(s.g.matrix()),
    }
}

fn span_from_json(j: &SpanJson, a: &AlgebraRef) -> Result<Span> {
    let x = module_from_json(&j.x, a)?;
    let y = module_from_json(&j.y, a)?;
    let z = module_from_json(&j.z, a)?;
    Ok(Span { f: matrix_morphism_from_json(&j.f, &x, &y)?, g: matrix_morphism_from_json(&j.g, &x, &z)? })
}

impl Weq2Witness {
    pub fn new(class: &AllowableClass, d: &Weq2Diagram, c: &Weq2Check) -> Self {
        Weq2Witness {
            algebra: algebra_to_json(class.algebra()),
            class: class_to_json(class),
            top: span_to_json(&d.top),
            bottom: span_to_json(&d.bottom),
            on_x: matrix_to_json(d.on_x.matrix()),
            on_y: matrix_to_json(d.on_y.matrix()),
            on_z: matrix_to_json(d.on_z.matrix()),
            induced: matrix_to_json(c.induced.matrix()),
            induced_is_weak_equivalence: c.induced_is_weak_equivalence,
        }
    }

    pub fn decode(&self) -> Result<(AllowableClass, Weq2Diagram)> {
        let a = algebra_from_json(&self.algebra)?;
        let class = class_from_json(&self.class, &a)?;
        let top = span_from_json(&self.top, &a)?;
        let bottom = span_from_json(&self.bottom, &a)?;
        let on_x = matrix_morphism_from_json(&self.on_x, top.x(), bottom.x())?;
        let on_y = matrix_morphism_from_json(&self.on_y, top.f.target(), bottom.f.target())?;
        let on_z = matrix_morphism_from_json(&self.on_z, top.g.target(), bottom.g.target())?;
        Ok((class, Weq2Diagram { top, bottom, on_x, on_y, on_z }))
    }

    /// Rebuilds the diagram from the serialized data alone and reruns every check; true when
    /// the hypotheses hold and both the induced map and the verdict are reproduced.
    pub fn reverify(&self) -> Result<bool> {
        let (class, d) = self.decode()?;
        let c = match d.check(&class) {
            Ok(c) => c,
            Err(Error::NonCommuting(_) | Error::NotCofibration | Error::Hypothesis(_)) => return Ok(false),
            Err(e) => return Err(e),
        };
        Ok(matrix_to_json(c.induced.matrix()) == self.induced
            && c.induced_is_weak_equivalence == self.induced_is_weak_equivalence)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Violation {
    pub trial: usize,
    pub witness: Weq2Witness,
}

/// Report format `audit.v1`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AuditReport {
    pub schema: String,
    pub scenario: String,
    pub seed: u64,
    pub trials: usize,
    pub injected: bool,
    pub violations: Vec<Violation>,
    pub verdict: String,
}

impl AuditReport {
    pub fn violation_count(&self) -> usize {
        self.violations.len()
    }

    pub fn reverify_all(&self) -> Result<bool> {
        for v in &self.violations {
            if !v.witness.reverify()? || v.witness.induced_is_weak_equivalence {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let r: AuditReport = serde_json::from_str(s)?;
        if r.schema != "audit.v1" {
            return Err(Error::Schema(format!("expected audit.v1, got {:?}", r.schema)));
        }
        Ok(r)
    }
}

fn scenario(class: &AllowableClass) -> String {
    let a = class.algebra();
    format!("weq2/{}/dim{}/gf{}", class.name(), a.dim(), a.field().p())
}

/// Largest random module dimension used by the audit.
pub const AUDIT_MAX_DIM: usize = 3;

fn run_trial(class: &AllowableClass, seed: u64, trial: usize) -> Result<Option<Violation>> {
    let mut rng = rng_for(seed, trial as u64);
    let d = random_weq2_diagram(class, AUDIT_MAX_DIM, &mut rng)?;
    let c = d.check(class)?;
    Ok(c.is_violation().then(|| Violation { trial, witness: Weq2Witness::new(class, &d, &c) }))
}

/// Runs `trials` seeded random Weq 2 diagrams, trial `i` drawing from stream `i` of `seed`.
/// With `inject`, the canonical counterexample diagram (when one exists) is appended as trial `trials`.
pub fn weq2_audit(class: &AllowableClass, trials: usize, seed: u64, inject: bool) -> Result<AuditReport> {
    if trials == 0 {
        return Err(Error::Hypothesis("an audit needs at least one trial".into()));
    }
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(trials);
    let mut results: Vec<(usize, Result<Option<Violation>>)> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                s.spawn(move || {
                    (w..trials).step_by(workers).map(|t| (t, run_trial(class, seed, t))).collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("audit worker panicked")).collect()
    });
    results.sort_by_key(|(t, _)| *t);
    let mut violations = Vec::new();
    for (_, r) in results {
        if let Some(v) = r? {
            violations.push(v);
        }
    }
    let mut total = trials;
    if inject {
        if let Some(b) = canonical_counterexample(class)? {
            let c = b.diagram.check(class)?;
            if c.is_violation() {
                violations.push(Violation { trial: trials, witness: Weq2Witness::new(class, &b.diagram, &c) });
            }
            total += 1;
        }
    }
    let verdict = format!("{} violations", violations.len());
    Ok(AuditReport { schema: "audit.v1".into(), scenario: scenario(class), seed, trials: total, injected: inject, violations, verdict })
}

/// Simples (or one-dimensional modules), indecomposable projectives and injectives, and the
/// quotients of the projectives by the submodule generated by one radical element.
pub fn suite_modules(class: &AllowableClass) -> Result<Vec<Module>> {
    let a = class.algebra();
    let mut out = Vec::new();
    let projectives = if a.provenance().is_some() {
        out.extend(Module::simples(a)?);
        Module::indecomposable_projectives(a)?
    } else {
        out.extend(Module::one_dimensional(a, 8)?);
        vec![Module::regular(a.clone())]
    };
    for p in &projectives {
        for r in a.radical_basis().unwrap_or(&[]) {
            let gens = p.combination(r);
            let sub = p.generated_subspace(&gens);
            if sub.cols() > 0 && sub.cols() < p.dim() {
                out.push(p.quotient(&sub)?.0);
            }
        }
    }
    let op = a.opposite();
    let opp = if op.provenance().is_some() {
        Module::indecomposable_projectives(&op)?
    } else {
        vec![Module::regular(op.clone())]
    };
    for q in opp {
        out.push(q.dual().rebase(a)?);
    }
    out.extend(projectives);
    Ok(out)
}

/// A suite module of finite positive E-projective dimension, with that dimension.
pub fn finite_positive_pd(class: &AllowableClass) -> Result<Option<(Module, usize)>> {
    if class.is_split_semantics() {
        return Ok(None);
    }
    for m in suite_modules(class)? {
        if let PdValue::Finite(n) = class.projective_dimension(&m, PD_BOUND)? {
            if n > 0 {
                return Ok(Some((m, n)));
            }
        }
    }
    Ok(None)
}

/// Nonvanishing `Ext^1(X, M)` and the map it induces along the pushout map.
#[derive(Clone, Debug)]
pub struct ExtObstruction {
    pub module: Module,
    /// `dim Ext^1(X, M)`, positive.
    pub ext_x: usize,
    /// `dim Ext^1` of the bottom and top pushouts against `M`.
    pub ext_bottom: usize,
    pub ext_top: usize,
    pub induced_is_iso: bool,
}

#[derive(Clone, Debug)]
pub struct CounterexampleBundle {
    pub class: AllowableClass,
    /// The starting suite module and its dimension, before descending by syzygies.
    pub found: Module,
    pub found_pd: usize,
    pub x: Module,
    pub x_pd: PdValue,
    /// `0 -> P1 -s-> P0 -p-> X -> 0`.
    pub cover: Morphism,
    pub s: Morphism,
    pub diagram: Weq2Diagram,
    pub induced: Morphism,
    pub induced_is_stable_equivalence: bool,
    /// `P0 ⊔_P1 P0 -> P0 ⊕ X`.
    pub shearing: Morphism,
    pub obstruction: ExtObstruction,
}

impl CounterexampleBundle {
    pub fn top_pushout(&self) -> &Module {
        self.induced.source()
    }

    pub fn bottom_pushout(&self) -> &Module {
        self.induced.target()
    }

    /// Checks both stated invariants again: pd of `X` is one and the pushout map is not a weak equivalence.
    pub fn verify(&self) -> Result<bool> {
        let pd_ok = self.class.projective_dimension(&self.x, PD_BOUND)? == PdValue::Finite(1);
        let c = self.diagram.check(&self.class)?;
        Ok(pd_ok && c.is_violation() && c.induced == self.induced && !self.obstruction.induced_is_iso)
    }

    pub fn verdict(&self) -> &'static str {
        if self.induced_is_stable_equivalence {
            "stable equivalence"
        } else {
            "NOT stable equivalence"
        }
    }
}

/// Finds a suite module of finite positive E-projective dimension, descends by syzygies to
/// dimension one, and builds the diagram `P1 = P1 = P1` over `P0 <- P1 -> P0` with vertical
/// maps `(s, id, s)`. `None` when every suite module has dimension 0 or at least the bound.
pub fn canonical_counterexample(class: &AllowableClass) -> Result<Option<CounterexampleBundle>> {
    let Some((found, found_pd)) = finite_positive_pd(class)? else {
        return Ok(None);
    };
    let mut x = found.clone();
    let mut n = found_pd;
    while n > 1 {
        x = class.syzygy(&x)?;
        n = match class.projective_dimension(&x, PD_BOUND)? {
            PdValue::Finite(k) => k,
            PdValue::AtLeast(_) => return Err(Error::Hypothesis("syzygy lost finite dimension".into())),
        };
        if n == 0 {
            return Err(Error::Hypothesis("syzygy of a non-projective became projective".into()));
        }
    }
    let x_pd = class.projective_dimension(&x, PD_BOUND)?;
    let cover = class.cover(&x)?;
    let s = kernel(&cover).map;
    let p1 = s.source().clone();
    if !class.is_projective(&p1)? {
        return Err(Error::Hypothesis("kernel of the cover is not E-projective".into()));
    }
    let id = Morphism::identity(&p1);
    let diagram = Weq2Diagram {
        top: Span { f: id.clone(), g: id.clone() },
        bottom: Span { f: s.clone(), g: s.clone() },
        on_x: id,
        on_y: s.clone(),
        on_z: s.clone(),
    };
    let c = diagram.check(class)?;
    let shearing = shearing_isomorphism(&s)?;

    let m = p1.clone();
    let ext_x = class.ext(&x, &m, 1)?.dim;
    let em = class.ext_map(&c.induced, &m, 1)?;
    let obstruction = ExtObstruction {
        module: m,
        ext_x,
        ext_bottom: em.source_dim,
        ext_top: em.target_dim,
        induced_is_iso: em.is_iso(),
    };
    Ok(Some(CounterexampleBundle {
        class: class.clone(),
        found,
        found_pd,
        x,
        x_pd,
        cover,
        s,
        induced: c.induced.clone(),
        induced_is_stable_equivalence: c.induced_is_weak_equivalence,
        diagram,
        shearing,
        obstruction,
    }))
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ObstructionJson {
    pub module: ModuleJson,
    pub ext_x: usize,
    pub ext_bottom: usize,
    pub ext_top: usize,
    pub induced_is_iso: bool,
}

/// Serialized counterexample: the resolution of `X`, the Weq 2 diagram pair (which carries the
/// pushout map), the shearing isomorphism and the Ext obstruction.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BundleJson {
    pub schema: String,
    pub x: ModuleJson,
    pub x_pd: usize,
    pub found_pd: usize,
    pub p0: ModuleJson,
    pub p1: ModuleJson,
    pub cover: MatrixJson,
    pub s: MatrixJson,
    pub diagram: Weq2Witness,
    pub shearing: MatrixJson,
    pub obstruction: ObstructionJson,
    pub verdict: String,
}

impl CounterexampleBundle {
    pub fn to_json(&self) -> Result<BundleJson> {
        let c = self.diagram.check(&self.class)?;
        let x_pd = match self.x_pd {
            PdValue::Finite(n) => n,
            PdValue::AtLeast(_) => return Err(Error::Hypothesis("bundle with unbounded dimension".into())),
        };
        Ok(BundleJson {
            schema: "counterexample.v1".into(),
            x: module_to_json(&self.x, false),
            x_pd,
            found_pd: self.found_pd,
            p0: module_to_json(self.cover.source(), false),
            p1: module_to_json(self.s.source(), false),
            cover: matrix_to_json(self.cover.matrix()),
            s: matrix_to_json(self.s.matrix()),
            diagram: Weq2Witness::new(&self.class, &self.diagram, &c),
            shearing: matrix_to_json(self.shearing.matrix()),
            obstruction: ObstructionJson {
                module: module_to_json(&self.obstruction.module, false),
                ext_x: self.obstruction.ext_x,
                ext_bottom: self.obstruction.ext_bottom,
                ext_top: self.obstruction.ext_top,
                induced_is_iso: self.obstruction.induced_is_iso,
            },
            verdict: self.verdict().into(),
        })
    }
}

/// Whether the bottom pushout of a bundle is isomorphic to `X ⊕ P0`.
pub fn bundle_shape_matches(b: &CounterexampleBundle) -> Result<bool> {
    let a = b.class.algebra();
    let target = sum(a, &[b.x.clone(), b.cover.source().clone()])?;
    Ok(find_isomorphism(b.bottom_pushout(), &target)?.is_found())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProbeShape {
    Pushout,
    Tower,
}

#[derive(Clone, Debug)]
pub struct ProbeInstance {
    pub colimit: Module,
    pub projective: bool,
    /// With a non-projective colimit, whether `colim -> 0` fails to be a weak equivalence,
    /// so that the levelwise weak equivalence to the zero diagram is not preserved.
    pub breaks_well_definedness: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub shape: ProbeShape,
    pub instances: Vec<ProbeInstance>,
}

impl ProbeReport {
    pub fn all_projective(&self) -> bool {
        self.instances.iter().all(|i| i.projective)
    }

    pub fn failures(&self) -> usize {
        self.instances.iter().filter(|i| !i.projective).count()
    }

    /// Every non-projective colimit comes with a failure of well-definedness.
    pub fn correlated(&self) -> bool {
        self.instances.iter().all(|i| i.projective || i.breaks_well_definedness == Some(true))
    }
}

fn probe(class: &AllowableClass, colimit: Module) -> Result<ProbeInstance> {
    let projective = class.is_projective(&colimit)?;
    let breaks = if projective {
        None
    } else {
        let zero = Module::zero(class.algebra().clone());
        Some(!is_stable_equivalence(class, &Morphism::zero(&colimit, &zero))?)
    };
    Ok(ProbeInstance { colimit, projective, breaks_well_definedness: breaks })
}

/// Colimits of random diagrams of E-projectives of the given shape, with E-mono first legs
/// (pushouts) or E-mono bonding maps (towers). For pushouts the instance
/// `P0 ⊔_P1 P0` from the canonical counterexample is probed first when it exists.
pub fn colimit_projectivity_probe(class: &AllowableClass, shape: ProbeShape, instances: usize, seed: u64) -> Result<ProbeReport> {
    let a = class.algebra();
    let mut out = Vec::new();
    if shape == ProbeShape::Pushout && instances > 0 {
        if let Some(b) = canonical_counterexample(class)? {
            out.push(probe(class, pushout(&b.s, &b.s)?.object)?);
        }
    }
    let mut i = 0u64;
    while out.len() < instances {
        let mut rng = rng_for(seed, i);
        i += 1;
        let colimit = match shape {
            ProbeShape::Pushout => {
                let p0 = random_projective(class, 3, &mut rng)?;
                let p1 = random_projective(class, 3, &mut rng)?;
                let p2 = random_projective(class, 3, &mut rng)?;
                let mut f = random_map(&p0, &p1, &mut rng)?;
                if !class.is_mono(&f)? {
                    let t = sum(a, &[p1, p0.clone()])?;
                    let id = Matrix::identity(a.field(), p0.dim());
                    f = Morphism::new(p0.clone(), t, f.matrix().vstack(&id))?;
                }
                let g = random_map(&p0, &p2, &mut rng)?;
                pushout(&f, &g)?.object
            }
            ProbeShape::Tower => {
                let len = rng.gen_range(1..=4);
                let mut objs = vec![random_projective(class, 3, &mut rng)?];
                let mut maps = Vec::new();
                for _ in 1..len {
                    let last = objs.last().expect("nonempty").clone();
                    let q = random_projective(class, 2, &mut rng)?;
                    let h = random_map(&last, &q, &mut rng)?;
                    let next = sum(a, &[last.clone(), q])?;
                    let id = Matrix::identity(a.field(), last.dim());
                    maps.push(Morphism::new(last, next.clone(), id.vstack(h.matrix()))?);
                    objs.push(next);
                }
                Tower::new(class, objs, maps)?.colimit().clone()
            }
        };
        out.push(probe(class, colimit)?);
    }
    Ok(ProbeReport { shape, instances: out })
}

/// The three sides of the dichotomy on one (algebra, class) pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dichotomy {
    pub counterexample: bool,
    pub injected_audit_violation: bool,
    pub finite_positive_pd: bool,
}

impl Dichotomy {
    pub fn consistent(&self) -> bool {
        self.counterexample == self.injected_audit_violation && self.counterexample == self.finite_positive_pd
    }
}

pub fn dichotomy(class: &AllowableClass, trials: usize, seed: u64) -> Result<Dichotomy> {
    let counterexample = canonical_counterexample(class)?.is_some();
    let report = weq2_audit(class, trials, seed, true)?;
    Ok(Dichotomy {
        counterexample,
        injected_audit_violation: report.violation_count() > 0,
        finite_positive_pd: finite_positive_pd(class)?.is_some(),
    })
}
