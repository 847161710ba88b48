//! Homotopy colimits: shearing maps, homotopy pushouts, cone functors, factorizations,
//! suspension, eventually-identity towers and geometric realization towers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};
use crate::modcat::{
    cokernel, direct_sum, find_isomorphism, hom_space, pushout, solve_in_span, DirectSum, Module, Morphism, Pushout,
};
use crate::relclass::AllowableClass;
use crate::stable::is_stable_equivalence;

fn blocks(f: Field, row_dims: &[usize], col_dims: &[usize], parts: &[(usize, usize, &Matrix)]) -> Matrix {
    let offs = |d: &[usize], i: usize| d[..i].iter().sum::<usize>();
    let mut m = Matrix::zeros(f, row_dims.iter().sum(), col_dims.iter().sum());
    for &(r, c, b) in parts {
        m.set_block(offs(row_dims, r), offs(col_dims, c), b);
    }
    m
}

fn checked(source: &Module, target: &Module, m: Matrix, what: &str) -> Result<Morphism> {
    Morphism::new(source.clone(), target.clone(), m)
        .map_err(|_| Error::InvalidMorphism(format!("{what} is not A-linear")))
}

/// Solves `m ∘ q = h` for `m`, given `h` vanishing on `ker q`.
fn descend(q: &Morphism, h: &Morphism) -> Result<Option<Morphism>> {
    let Some(mt) = q.matrix().transpose().solve(&h.matrix().transpose())? else {
        return Ok(None);
    };
    Ok(Morphism::new(q.target().clone(), h.target().clone(), mt.transpose()).ok())
}

/// The map `s: X ⊕ Z -> Y ⊕ Z` sending `X` by `e` into `Y` and `Z` by `(f, id)`.
#[derive(Clone, Debug)]
pub struct Shear {
    pub map: Morphism,
    /// The induced `coker e -> coker s`, an isomorphism.
    pub cokernel_iso: Morphism,
    pub is_e_mono: bool,
}

pub fn shear_mono(class: &AllowableClass, e: &Morphism, f: &Morphism) -> Result<Shear> {
    if e.target() != f.target() {
        return Err(Error::Hypothesis("shear needs a common target".into()));
    }
    if !class.is_mono(e)? || !class.is_mono(f)? {
        return Err(Error::NotCofibration);
    }
    let (x, y, z) = (e.source(), e.target(), f.source());
    let a = x.algebra();
    let fld = x.field();
    let src = direct_sum(a, &[x.clone(), z.clone()])?;
    let tgt = direct_sum(a, &[y.clone(), z.clone()])?;
    let id = Matrix::identity(fld, z.dim());
    let m = blocks(fld, &[y.dim(), z.dim()], &[x.dim(), z.dim()], &[(0, 0, e.matrix()), (0, 1, f.matrix()), (1, 1, &id)]);
    let s = Morphism::new_unchecked(src.module, tgt.module.clone(), m);
    let ce = cokernel(e);
    let cs = cokernel(&s);
    let through = tgt.injections[0].then_unchecked(&cs.map);
    let iso = descend(&ce.map, &through)?
        .filter(|m| m.is_iso())
        .ok_or_else(|| Error::Hypothesis("cokernels of the shear are not identified".into()))?;
    let is_e_mono = class.is_mono(&s)?;
    Ok(Shear { map: s, cokernel_iso: iso, is_e_mono })
}

/// The explicit isomorphism `Y ⊔_X Y -> Y ⊕ coker f`, `(y1, y2) ↦ (y1 + y2, q y2)`.
pub fn shearing_isomorphism(f: &Morphism) -> Result<Morphism> {
    if !f.is_injective() {
        return Err(Error::Hypothesis("shearing needs a monomorphism".into()));
    }
    let y = f.target();
    let a = y.algebra();
    let fld = y.field();
    let po = pushout(f, f)?;
    let c = cokernel(f);
    let tgt = direct_sum(a, &[y.clone(), c.object.clone()])?;
    let id = Matrix::identity(fld, y.dim());
    let on_sum = blocks(fld, &[y.dim(), c.object.dim()], &[y.dim(), y.dim()], &[(0, 0, &id), (0, 1, &id), (1, 1, c.map.matrix())]);
    let on_sum = Morphism::new_unchecked(po.sum.module.clone(), tgt.module, on_sum);
    let iso = descend(&po.quotient, &on_sum)?
        .filter(|m| m.is_iso())
        .ok_or_else(|| Error::Hypothesis("shearing map does not descend to an isomorphism".into()))?;
    Ok(iso)
}

/// A pushout of a cofibration `f: X -> Y` along `g: X -> Z`.
#[derive(Clone, Debug)]
pub struct PushoutSquare {
    pub f: Morphism,
    pub g: Morphism,
    pub pushout: Pushout,
    pub g_is_weak_equivalence: bool,
    /// Whether the leg `Y -> Y ⊔_X Z` is a weak equivalence, recorded when `g` is one.
    pub left_proper: Option<bool>,
}

impl PushoutSquare {
    pub fn object(&self) -> &Module {
        &self.pushout.object
    }
}

pub fn homotopy_pushout(class: &AllowableClass, f: &Morphism, g: &Morphism) -> Result<PushoutSquare> {
    if !class.is_mono(f)? {
        return Err(Error::NotCofibration);
    }
    let po = pushout(f, g)?;
    if !class.is_mono(&po.leg_z)? {
        return Err(Error::Hypothesis("pushout of a cofibration is not a cofibration".into()));
    }
    let weq = is_stable_equivalence(class, g)?;
    let left_proper = if weq { Some(is_stable_equivalence(class, &po.leg_y)?) } else { None };
    Ok(PushoutSquare { f: f.clone(), g: g.clone(), pushout: po, g_is_weak_equivalence: weq, left_proper })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConeKind {
    /// `P_X = X` for classes where everything is E-projective.
    Identity,
    /// `J(X) = Hom_k(Hom_A(X, A), A)` with `η(x) = (h ↦ h(x))`; strictly functorial.
    Evaluation,
    /// `J(X) ⊕ A` with unit `(η, 0)` and `J(g) ⊕ id_A`; strictly functorial.
    PaddedEvaluation,
    /// Greedy subfamily of a basis of `Hom_A(X, A)` that still embeds `X`.
    MinimalEvaluation,
    /// The class's canonical envelope.
    Envelope,
}

#[derive(Clone, Debug)]
pub struct ConeValue {
    pub object: Module,
    pub unit: Morphism,
    homs: Vec<Matrix>,
}

#[derive(Clone, Debug)]
pub struct ConeFunctor {
    class: AllowableClass,
    kind: ConeKind,
}

impl ConeFunctor {
    pub fn new(class: AllowableClass, kind: ConeKind) -> Self {
        ConeFunctor { class, kind }
    }

    pub fn default_for(class: &AllowableClass) -> Self {
        let kind = if class.is_split_semantics() { ConeKind::Identity } else { ConeKind::Evaluation };
        ConeFunctor { class: class.clone(), kind }
    }

    pub fn class(&self) -> &AllowableClass {
        &self.class
    }

    pub fn kind(&self) -> ConeKind {
        self.kind
    }

    /// `(P_X, i_X)`, with `P_X` E-projective and `i_X` an E-mono checked.
    pub fn apply(&self, x: &Module) -> Result<ConeValue> {
        let a = x.algebra().clone();
        let value = match self.kind {
            ConeKind::Identity => ConeValue { object: x.clone(), unit: Morphism::identity(x), homs: vec![] },
            ConeKind::Evaluation | ConeKind::MinimalEvaluation => {
                let reg = Module::regular(a.clone());
                let mut hs: Vec<Matrix> = hom_space(x, &reg)?.into_iter().map(|h| h.matrix().clone()).collect();
                if self.kind == ConeKind::MinimalEvaluation {
                    let mut kept: Vec<Matrix> = Vec::new();
                    let mut rank = 0;
                    for h in hs {
                        if rank == x.dim() {
                            break;
                        }
                        let mut trial = kept.clone();
                        trial.push(h.clone());
                        let r = Matrix::vstack_all(x.field(), x.dim(), &trial).rank();
                        if r > rank {
                            rank = r;
                            kept = trial;
                        }
                    }
                    hs = kept;
                }
                let object = Module::free(a, hs.len());
                let unit = Matrix::vstack_all(x.field(), x.dim(), &hs);
                ConeValue { unit: Morphism::new_unchecked(x.clone(), object.clone(), unit), object, homs: hs }
            }
            ConeKind::PaddedEvaluation => {
                let base = ConeFunctor::new(self.class.clone(), ConeKind::Evaluation).apply(x)?;
                let reg = Module::regular(a.clone());
                let object = direct_sum(&a, &[base.object.clone(), reg.clone()])?.module;
                let unit = base.unit.matrix().vstack(&Matrix::zeros(x.field(), reg.dim(), x.dim()));
                ConeValue { unit: Morphism::new_unchecked(x.clone(), object.clone(), unit), object, homs: base.homs }
            }
            ConeKind::Envelope => {
                let env = self.class.envelope(x)?;
                ConeValue { object: env.target().clone(), unit: env, homs: vec![] }
            }
        };
        if !self.class.is_projective(&value.object)? {
            return Err(Error::ConeViolation("cone value is not E-projective".into()));
        }
        if !self.class.is_mono(&value.unit)? {
            return Err(Error::ConeViolation("cone unit is not an E-mono".into()));
        }
        Ok(value)
    }

    /// `J(g): P_X -> P_Y` with `J(g) i_X = i_Y g`; E-monos must go to E-monos.
    pub fn apply_map(&self, g: &Morphism, jx: &ConeValue, jy: &ConeValue) -> Result<Morphism> {
        if jx.unit.source() != g.source() || jy.unit.source() != g.target() {
            return Err(Error::SourceMismatch);
        }
        let fld = g.source().field();
        let m = match self.kind {
            ConeKind::Identity => g.matrix().clone(),
            ConeKind::Evaluation | ConeKind::PaddedEvaluation => {
                let n = g.source().algebra().dim();
                let mut m = Matrix::zeros(fld, jy.object.dim(), jx.object.dim());
                let id = Matrix::identity(fld, n);
                if self.kind == ConeKind::PaddedEvaluation {
                    m.set_block(jy.homs.len() * n, jx.homs.len() * n, &id);
                }
                for (jp, hp) in jy.homs.iter().enumerate() {
                    let c = solve_in_span(&jx.homs, &hp.mul(g.matrix()))
                        .ok_or_else(|| Error::ConeViolation("evaluation basis does not span".into()))?;
                    for (j, cj) in c.iter().enumerate() {
                        if *cj != 0 {
                            m.set_block(jp * n, j * n, &id.scale(*cj));
                        }
                    }
                }
                m
            }
            ConeKind::MinimalEvaluation | ConeKind::Envelope => {
                let hs = hom_space(&jx.object, &jy.object)?;
                let imgs: Vec<Matrix> = hs.iter().map(|h| h.matrix().mul(jx.unit.matrix())).collect();
                let rhs = jy.unit.matrix().mul(g.matrix());
                let c = solve_in_span(&imgs, &rhs)
                    .ok_or_else(|| Error::ConeViolation("map does not extend over the cone".into()))?;
                let mut m = Matrix::zeros(fld, jy.object.dim(), jx.object.dim());
                for (h, cj) in hs.iter().zip(&c) {
                    m.add_scaled(h.matrix(), *cj);
                }
                m
            }
        };
        let jg = Morphism::new_unchecked(jx.object.clone(), jy.object.clone(), m);
        if jg.matrix().mul(jx.unit.matrix()) != jy.unit.matrix().mul(g.matrix()) {
            return Err(Error::ConeViolation("cone is not natural on this map".into()));
        }
        if self.class.is_mono(g)? && !self.class.is_mono(&jg)? {
            return Err(Error::ConeViolation("cone does not preserve this E-mono".into()));
        }
        Ok(jg)
    }
}

/// `f = f1 ∘ f0` with `f0 = (i_X, f): X -> P_X ⊕ Y` a cofibration and `f1` the projection.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub f: Morphism,
    pub cone: ConeValue,
    pub middle: DirectSum,
    pub f0: Morphism,
    pub f1: Morphism,
}

pub fn factorize(cone: &ConeFunctor, f: &Morphism) -> Result<Factorization> {
    let class = cone.class();
    let (x, y) = (f.source(), f.target());
    let jx = cone.apply(x)?;
    let middle = direct_sum(x.algebra(), &[jx.object.clone(), y.clone()])?;
    let f0 = Morphism::new_unchecked(x.clone(), middle.module.clone(), jx.unit.matrix().vstack(f.matrix()));
    let f1 = middle.projections[1].clone();
    if !class.is_mono(&f0)? {
        return Err(Error::ConeViolation("factorization's first map is not a cofibration".into()));
    }
    if !is_stable_equivalence(class, &f1)? {
        return Err(Error::Hypothesis("factorization's projection is not a weak equivalence".into()));
    }
    if f1.matrix().mul(f0.matrix()) != *f.matrix() {
        return Err(Error::NonCommuting("factorization does not compose to f".into()));
    }
    Ok(Factorization { f: f.clone(), cone: jx, middle, f0, f1 })
}

impl Factorization {
    /// The map `P_X ⊔_X (P_X ⊕ Y) -> P_X ⊔_X Y` induced by `f1`, and whether it is a weak equivalence.
    pub fn pushout_comparison(&self, class: &AllowableClass) -> Result<(Morphism, bool)> {
        let left = pushout(&self.cone.unit, &self.f0)?;
        let right = pushout(&self.cone.unit, &self.f)?;
        let m = left.induced(&right, &Morphism::identity(&self.cone.object), &self.f1)?;
        let weq = is_stable_equivalence(class, &m)?;
        Ok((m, weq))
    }
}

/// `ΣX = P_X ⊔_X P_X`.
#[derive(Clone, Debug)]
pub struct Suspension {
    pub cone: ConeValue,
    pub pushout: Pushout,
}

impl Suspension {
    pub fn object(&self) -> &Module {
        &self.pushout.object
    }

    pub fn base(&self) -> &Module {
        self.cone.unit.source()
    }
}

pub fn suspend(cone: &ConeFunctor, x: &Module) -> Result<Suspension> {
    let jx = cone.apply(x)?;
    let po = pushout(&jx.unit, &jx.unit)?;
    let s = Suspension { cone: jx, pushout: po };
    let class = cone.class();
    if class.is_projective(x)? && !class.is_projective(s.object())? {
        return Err(Error::Hypothesis("suspension of an E-projective is not E-projective".into()));
    }
    Ok(s)
}

/// `Σg: ΣX -> ΣY`, induced by `J(g)` on both cones.
pub fn suspend_map(cone: &ConeFunctor, g: &Morphism, sx: &Suspension, sy: &Suspension) -> Result<Morphism> {
    let jg = cone.apply_map(g, &sx.cone, &sy.cone)?;
    sx.pushout.induced(&sy.pushout, &jg, &jg)
}

/// `Σg` for an E-mono `g`. Cones without strict functoriality re-choose the extension `J(g)`
/// (seeded search over `J(g) + {h : h i_X = 0}`) until `Σg` is an E-mono.
pub fn suspend_cofibration(cone: &ConeFunctor, g: &Morphism, sx: &Suspension, sy: &Suspension) -> Result<Morphism> {
    let class = cone.class();
    let jg = cone.apply_map(g, &sx.cone, &sy.cone)?;
    let first = sx.pushout.induced(&sy.pushout, &jg, &jg)?;
    if class.is_mono(&first)? || matches!(cone.kind(), ConeKind::Identity | ConeKind::Evaluation | ConeKind::PaddedEvaluation) {
        return Ok(first);
    }
    let (px, py) = (&sx.cone.object, &sy.cone.object);
    let fld = px.field();
    let hs = hom_space(px, py)?;
    let cols: Vec<Matrix> = hs
        .iter()
        .map(|h| {
            let m = h.matrix().mul(sx.cone.unit.matrix());
            Matrix::from_fn(fld, m.rows() * m.cols(), 1, |r, _| m.entries()[r])
        })
        .collect();
    let rows = py.dim() * sx.base().dim();
    let null = Matrix::hstack_all(fld, rows, &cols).kernel_basis();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e1f);
    for _ in 0..EXTENSION_TRIES {
        let mut m = jg.matrix().clone();
        for k in 0..null.rows() {
            let c = rng.gen_range(0..fld.p());
            for (h, &w) in hs.iter().zip(null.row(k)) {
                m.add_scaled(h.matrix(), fld.mul(c, w));
            }
        }
        let h = Morphism::new_unchecked(px.clone(), py.clone(), m);
        let s = sx.pushout.induced(&sy.pushout, &h, &h)?;
        if class.is_mono(&s)? {
            return Ok(s);
        }
    }
    Err(Error::ConeViolation("no extension of the cone makes the suspension a cofibration".into()))
}

const EXTENSION_TRIES: usize = 64;

/// A finite tower of cofibrations `X_0 -> ... -> X_N`, constant after `X_N`.
#[derive(Clone, Debug)]
pub struct Tower {
    objects: Vec<Module>,
    maps: Vec<Morphism>,
}

impl Tower {
    pub fn new(class: &AllowableClass, objects: Vec<Module>, maps: Vec<Morphism>) -> Result<Self> {
        if objects.is_empty() || maps.len() + 1 != objects.len() {
            return Err(Error::ShapeMismatch("a tower needs one map between consecutive objects".into()));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.source() != &objects[i] || m.target() != &objects[i + 1] {
                return Err(Error::ShapeMismatch(format!("tower map {i} has the wrong ends")));
            }
            if !class.is_mono(m)? {
                return Err(Error::NotCofibration);
            }
        }
        Ok(Tower { objects, maps })
    }

    pub fn constant(x: &Module) -> Self {
        Tower { objects: vec![x.clone()], maps: vec![] }
    }

    pub fn objects(&self) -> &[Module] {
        &self.objects
    }

    pub fn maps(&self) -> &[Morphism] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn object(&self, n: usize) -> &Module {
        &self.objects[n.min(self.objects.len() - 1)]
    }

    /// The map `X_n -> X_{n+1}`, the identity past the end.
    pub fn map(&self, n: usize) -> Morphism {
        self.maps.get(n).cloned().unwrap_or_else(|| Morphism::identity(self.object(n)))
    }

    pub fn colimit(&self) -> &Module {
        self.objects.last().expect("nonempty tower")
    }
}

pub fn tower_colimit(t: &Tower) -> Module {
    t.colimit().clone()
}

#[derive(Clone, Debug)]
pub struct TowerComparison {
    pub levelwise_weak_equivalences: Vec<bool>,
    pub colimit_map: Morphism,
    pub colimit_weak_equivalence: bool,
}

impl TowerComparison {
    pub fn levelwise(&self) -> bool {
        self.levelwise_weak_equivalences.iter().all(|&b| b)
    }
}

/// Compares two towers along `phi[n]: F_n -> G_n`; both are padded with identities to a common length.
pub fn compare_towers(class: &AllowableClass, f: &Tower, g: &Tower, phi: &[Morphism]) -> Result<TowerComparison> {
    let n = f.len().max(g.len());
    if phi.len() != n {
        return Err(Error::ShapeMismatch(format!("need {n} comparison maps")));
    }
    for (i, p) in phi.iter().enumerate() {
        if p.source() != f.object(i) || p.target() != g.object(i) {
            return Err(Error::ShapeMismatch(format!("comparison map {i} has the wrong ends")));
        }
    }
    for i in 0..n.saturating_sub(1) {
        let l = phi[i + 1].matrix().mul(f.map(i).matrix());
        let r = g.map(i).matrix().mul(phi[i].matrix());
        if l != r {
            return Err(Error::NonCommuting(format!("square {i} of the tower map")));
        }
    }
    let lw = phi.iter().map(|p| is_stable_equivalence(class, p)).collect::<Result<Vec<_>>>()?;
    let colimit_map = phi[n - 1].clone();
    let cw = is_stable_equivalence(class, &colimit_map)?;
    Ok(TowerComparison { levelwise_weak_equivalences: lw, colimit_map, colimit_weak_equivalence: cw })
}

/// A simplicial module truncated at level `N`: face maps only, zero above `N`.
#[derive(Clone, Debug)]
pub struct SimplicialModule {
    modules: Vec<Module>,
    faces: Vec<Vec<Morphism>>,
}

impl SimplicialModule {
    /// `faces[n - 1][i] = d_i: F_n -> F_{n-1}` for `1 <= n <= N`.
    pub fn new(modules: Vec<Module>, faces: Vec<Vec<Morphism>>) -> Result<Self> {
        if modules.is_empty() || faces.len() + 1 != modules.len() {
            return Err(Error::ShapeMismatch("need face maps for every positive degree".into()));
        }
        for (k, ds) in faces.iter().enumerate() {
            let n = k + 1;
            if ds.len() != n + 1 {
                return Err(Error::ShapeMismatch(format!("degree {n} needs {} faces", n + 1)));
            }
            for (i, d) in ds.iter().enumerate() {
                if d.source() != &modules[n] || d.target() != &modules[n - 1] || !d.intertwines() {
                    return Err(Error::InvalidMorphism(format!("face d_{i} in degree {n}")));
                }
            }
        }
        for n in 2..modules.len() {
            for j in 0..=n {
                for i in 0..j {
                    let l = faces[n - 2][i].matrix().mul(faces[n - 1][j].matrix());
                    let r = faces[n - 2][j - 1].matrix().mul(faces[n - 1][i].matrix());
                    if l != r {
                        return Err(Error::FaceIdentity(format!("d_{i} d_{j} != d_{} d_{i} in degree {n}", j - 1)));
                    }
                }
            }
        }
        Ok(SimplicialModule { modules, faces })
    }

    pub fn concentrated(m: &Module) -> Self {
        SimplicialModule { modules: vec![m.clone()], faces: vec![] }
    }

    pub fn truncation(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn module(&self, n: usize) -> Module {
        match self.modules.get(n) {
            Some(m) => m.clone(),
            None => Module::zero(self.modules[0].algebra().clone()),
        }
    }

    pub fn modules(&self) -> &[Module] {
        &self.modules
    }

    pub fn face(&self, n: usize, i: usize) -> &Morphism {
        &self.faces[n - 1][i]
    }

    pub fn faces(&self) -> &[Vec<Morphism>] {
        &self.faces
    }

    /// `d_0 - d_1 + ... + (-1)^{n-1} d_{n-1}: F_n -> F_{n-1}`.
    pub fn alternating_face(&self, n: usize) -> Morphism {
        let (src, tgt) = (&self.modules[n], &self.modules[n - 1]);
        let fld = src.field();
        let mut m = Matrix::zeros(fld, tgt.dim(), src.dim());
        for i in 0..n {
            let s = if i % 2 == 0 { 1 } else { fld.neg(1) };
            m.add_scaled(self.faces[n - 1][i].matrix(), s);
        }
        Morphism::new_unchecked(src.clone(), tgt.clone(), m)
    }
}

/// Levelwise maps `F_n -> G_n` commuting with every face.
pub fn check_simplicial_map(f: &SimplicialModule, g: &SimplicialModule, phi: &[Morphism]) -> Result<()> {
    if f.truncation() != g.truncation() || phi.len() != f.truncation() + 1 {
        return Err(Error::ShapeMismatch("simplicial map needs one map per level".into()));
    }
    for (n, p) in phi.iter().enumerate() {
        if p.source() != &f.modules[n] || p.target() != &g.modules[n] || !p.intertwines() {
            return Err(Error::InvalidMorphism(format!("level {n} of the simplicial map")));
        }
    }
    for n in 1..phi.len() {
        for i in 0..=n {
            let l = g.face(n, i).matrix().mul(phi[n].matrix());
            let r = phi[n - 1].matrix().mul(f.face(n, i).matrix());
            if l != r {
                return Err(Error::NonCommuting(format!("face d_{i} in degree {n}")));
            }
        }
    }
    Ok(())
}

/// One pushout stage `GR(n) = Σ^{n-1} C_n ⊔_{Σ^{n-1} D_n} GR(n-1)`.
#[derive(Clone, Debug)]
pub struct RealizationStage {
    pub degree: usize,
    /// `Σ^{n-1}(i_{F_n} ⊕ id)`.
    pub left: Morphism,
    /// `f_n`.
    pub top: Morphism,
    pub pushout: Pushout,
}

#[derive(Clone, Debug)]
pub struct RealizationTower {
    pub simplicial: SimplicialModule,
    pub tower: Tower,
    pub stages: Vec<RealizationStage>,
    cones: Vec<ConeValue>,
    stage0: DirectSum,
    // degree 2 only: the cone on P_{F_2} and the suspension of P_{F_2}
    deg2: Option<Deg2>,
}

#[derive(Clone, Debug)]
struct Deg2 {
    cone_of_cone: ConeValue,
    sigma_p: Suspension,
}

impl RealizationTower {
    pub fn stage_dims(&self) -> Vec<usize> {
        self.tower.objects().iter().map(Module::dim).collect()
    }

    pub fn colimit(&self) -> &Module {
        self.tower.colimit()
    }

    pub fn cone(&self, n: usize) -> &ConeValue {
        &self.cones[n]
    }
}

/// Realization tower of a simplicial module truncated at `N <= 2`.
pub fn realization_tower(cone: &ConeFunctor, f: &SimplicialModule) -> Result<RealizationTower> {
    let class = cone.class();
    let nn = f.truncation();
    if nn > 2 {
        return Err(Error::Unsupported(format!("realization towers are implemented for truncation at most 2, got {nn}")));
    }
    let a = f.modules[0].algebra().clone();
    let fld = a.field();
    let cones = f.modules.iter().map(|m| cone.apply(m)).collect::<Result<Vec<_>>>()?;
    let ps: Vec<Module> = cones.iter().map(|c| c.object.clone()).collect();
    let mut parts0 = vec![f.modules[0].clone()];
    parts0.extend(ps[1..].iter().cloned());
    let stage0 = direct_sum(&a, &parts0)?;
    let mut objects = vec![stage0.module.clone()];
    let mut maps = Vec::new();
    let mut stages = Vec::new();
    let mut deg2 = None;
    if nn >= 1 {
        // D_1 = F_1 ⊕ P_{F_2}.., C_1 = P_{F_1} ⊕ P_{F_2}..
        let mut d1_parts = vec![f.modules[1].clone()];
        d1_parts.extend(ps[2..].iter().cloned());
        let d1 = direct_sum(&a, &d1_parts)?;
        let c1 = direct_sum(&a, &ps[1..])?;
        let dd: Vec<usize> = d1_parts.iter().map(Module::dim).collect();
        let cd: Vec<usize> = ps[1..].iter().map(Module::dim).collect();
        let gd: Vec<usize> = parts0.iter().map(Module::dim).collect();
        let ids: Vec<Matrix> = ps[2..].iter().map(|p| Matrix::identity(fld, p.dim())).collect();
        let mut vparts = vec![(0, 0, cones[1].unit.matrix())];
        for (k, id) in ids.iter().enumerate() {
            vparts.push((k + 1, k + 1, id));
        }
        let v1 = checked(&d1.module, &c1.module, blocks(fld, &cd, &dd, &vparts), "i ⊕ id")?;
        let alt1 = f.alternating_face(1);
        let mut fparts = vec![(0, 0, alt1.matrix()), (1, 0, cones[1].unit.matrix())];
        for (k, id) in ids.iter().enumerate() {
            fparts.push((k + 2, k + 1, id));
        }
        let f1 = checked(&d1.module, &stage0.module, blocks(fld, &gd, &dd, &fparts), "d")?;
        let po1 = pushout(&v1, &f1)?;
        let g1 = po1.leg_z.clone();
        if !class.is_mono(&g1)? {
            return Err(Error::Hypothesis("stage map GR(0) -> GR(1) is not a cofibration".into()));
        }
        objects.push(po1.object.clone());
        maps.push(g1.clone());
        stages.push(RealizationStage { degree: 1, left: v1, top: f1, pushout: po1.clone() });

        if nn == 2 {
            let alt2 = f.alternating_face(2);
            let jalt = cone.apply_map(&alt2, &cones[2], &cones[1])?;
            let idp = Matrix::identity(fld, ps[2].dim());
            // ũ = (J(alt), id): P_{F_2} -> C_1 extends v_1 ∘ d over i_{F_2}
            let u = checked(&ps[2], &c1.module, jalt.matrix().vstack(&idp), "cone extension")?;
            let into0 = Matrix::zeros(fld, f.modules[0].dim(), c1.module.dim()).vstack(&Matrix::identity(fld, c1.module.dim()));
            let incl = Morphism::new_unchecked(c1.module.clone(), stage0.module.clone(), into0);
            let a_map = u.then_unchecked(&po1.leg_y);
            let b_map = u.then_unchecked(&incl).then_unchecked(&g1);
            let sigma_f = suspend(cone, &f.modules[2])?;
            let f2 = sigma_f.pushout.universal(&a_map, &b_map)?;
            let sigma_p = suspend(cone, &ps[2])?;
            let cone_of_cone = sigma_p.cone.clone();
            let v2 = suspend_cofibration(cone, &cones[2].unit, &sigma_f, &sigma_p)?;
            if !class.is_mono(&v2)? {
                return Err(Error::ConeViolation("suspended cone unit is not a cofibration".into()));
            }
            let po2 = pushout(&v2, &f2)?;
            let g2 = po2.leg_z.clone();
            if !class.is_mono(&g2)? {
                return Err(Error::Hypothesis("stage map GR(1) -> GR(2) is not a cofibration".into()));
            }
            objects.push(po2.object.clone());
            maps.push(g2);
            stages.push(RealizationStage { degree: 2, left: v2, top: f2, pushout: po2 });
            deg2 = Some(Deg2 { cone_of_cone, sigma_p });
        }
    }
    let tower = Tower::new(class, objects, maps)?;
    Ok(RealizationTower { simplicial: f.clone(), tower, stages, cones, stage0, deg2 })
}

pub fn realize(cone: &ConeFunctor, f: &SimplicialModule) -> Result<Module> {
    Ok(realization_tower(cone, f)?.colimit().clone())
}

/// The maps `GR_φ(n): GR_F(n) -> GR_G(n)` induced by a simplicial map.
pub fn realization_map(cone: &ConeFunctor, rf: &RealizationTower, rg: &RealizationTower, phi: &[Morphism]) -> Result<Vec<Morphism>> {
    check_simplicial_map(&rf.simplicial, &rg.simplicial, phi)?;
    let a = rf.stage0.module.algebra().clone();
    let nn = rf.simplicial.truncation();
    let jphi = (1..=nn)
        .map(|n| cone.apply_map(&phi[n], &rf.cones[n], &rg.cones[n]))
        .collect::<Result<Vec<_>>>()?;
    let diag = |ms: &[Morphism]| -> Result<Morphism> {
        let srcs: Vec<Module> = ms.iter().map(|m| m.source().clone()).collect();
        let tgts: Vec<Module> = ms.iter().map(|m| m.target().clone()).collect();
        let s = direct_sum(&a, &srcs)?.module;
        let t = direct_sum(&a, &tgts)?.module;
        let mut mat = Matrix::zeros(a.field(), t.dim(), s.dim());
        let (mut r, mut c) = (0, 0);
        for m in ms {
            mat.set_block(r, c, m.matrix());
            r += m.target().dim();
            c += m.source().dim();
        }
        Ok(Morphism::new_unchecked(s, t, mat))
    };
    let mut parts = vec![phi[0].clone()];
    parts.extend(jphi.iter().cloned());
    let mut out = vec![diag(&parts)?.retarget(&rf.stage0.module, &rg.stage0.module)?];
    if nn >= 1 {
        let (sf, sg) = (&rf.stages[0], &rg.stages[0]);
        let on_c = diag(&jphi)?.retarget(sf.left.target(), sg.left.target())?;
        out.push(sf.pushout.induced(&sg.pushout, &on_c, &out[0])?);
    }
    if nn == 2 {
        let (df, dg) = (rf.deg2.as_ref().expect("degree 2 data"), rg.deg2.as_ref().expect("degree 2 data"));
        let jj = cone.apply_map(&jphi[1], &df.cone_of_cone, &dg.cone_of_cone)?;
        let on_sp = df.sigma_p.pushout.induced(&dg.sigma_p.pushout, &jj, &jj)?;
        let (sf, sg) = (&rf.stages[1], &rg.stages[1]);
        out.push(sf.pushout.induced(&sg.pushout, &on_sp, &out[1])?);
    }
    for n in 0..out.len().saturating_sub(1) {
        let l = out[n + 1].matrix().mul(rf.tower.map(n).matrix());
        let r = rg.tower.map(n).matrix().mul(out[n].matrix());
        if l != r {
            return Err(Error::NonCommuting(format!("realization map at stage {n}")));
        }
    }
    Ok(out)
}

/// Whether two modules are related by a stable equivalence found by seeded search.
pub fn stably_equivalent_objects(class: &AllowableClass, x: &Module, y: &Module, seed: u64) -> Result<bool> {
    if find_isomorphism(x, y)?.is_found() {
        return Ok(true);
    }
    Ok(crate::stable::find_stable_equivalence(class, x, y, seed, 128)?.is_some())
}
