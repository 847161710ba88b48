//! Finite-dimensional associative unital algebras.
//!
//! Two presentations are supported: a bound quiver (quiver plus admissible
//! relations, truncated at a nilpotency bound) and raw structure constants.
//! Quiver presentations record provenance (vertex idempotents, the radical
//! basis) so that projective covers and simple modules are available.
//!
//! Modules are right modules throughout. For paths, `p * q` is the
//! concatenation "first p, then q", which is nonzero only when the target of
//! `p` is the source of `q`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Quiver {
    pub vertices: usize,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: usize, arrows: &[(usize, usize, &str)]) -> Result<Self> {
        let q = Quiver {
            vertices,
            arrows: arrows
                .iter()
                .map(|&(s, t, l)| Arrow { source: s, target: t, label: l.to_string() })
                .collect(),
        };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = std::collections::HashSet::new();
        for a in &self.arrows {
            if a.source >= self.vertices || a.target >= self.vertices {
                return Err(Error::InvalidAlgebra(format!("arrow {} has an endpoint out of range", a.label)));
            }
            if !seen.insert(a.label.as_str()) {
                return Err(Error::InvalidAlgebra(format!("duplicate arrow label {}", a.label)));
            }
        }
        Ok(())
    }

    fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }
}

/// A linear combination of paths, each path given by arrow labels in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(i64, Vec<String>)>,
}

impl Relation {
    pub fn monomial(labels: &[&str]) -> Self {
        Relation { terms: vec![(1, labels.iter().map(|s| s.to_string()).collect())] }
    }

    pub fn new(terms: &[(i64, &[&str])]) -> Self {
        Relation {
            terms: terms.iter().map(|(c, l)| (*c, l.iter().map(|s| s.to_string()).collect())).collect(),
        }
    }
}

/// Data carried over from a bound-quiver presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    /// Basis index of the trivial path at each vertex.
    pub idempotents: Vec<usize>,
    /// Basis indices of the arrows.
    pub arrows: Vec<usize>,
    /// Basis indices spanning the radical (all nontrivial paths in the basis).
    pub radical: Vec<usize>,
    /// Source and target vertex of every basis path.
    pub endpoints: Vec<(usize, usize)>,
}

/// The original bound-quiver presentation, kept for serialization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverPresentation {
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    pub nilpotency_bound: usize,
}

pub type AlgebraRef = Arc<Algebra>;

#[derive(Clone, Debug)]
pub struct Algebra {
    field: Field,
    dim: usize,
    labels: Vec<String>,
    structure: Vec<Vec<Vec<u32>>>,
    unit: Vec<u32>,
    provenance: Option<Provenance>,
    presentation: Option<QuiverPresentation>,
    generators: Vec<usize>,
    radical: OnceLock<Option<Vec<Vec<u32>>>>,
    self_injective: OnceLock<bool>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.unit == other.unit
            && self.structure == other.structure
    }
}

/// One failed law found by [`Algebra::check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum AlgebraFailure {
    Associativity { i: usize, j: usize, k: usize },
    LeftUnit { i: usize },
    RightUnit { i: usize },
    IdempotentProduct { i: usize, j: usize },
    IdempotentSum,
    RadicalNotIdeal { i: usize, j: usize },
    RadicalNotNilpotent,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraReport {
    pub ok: bool,
    pub failures: Vec<AlgebraFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Path {
    source: usize,
    arrows: Vec<usize>,
}

impl Algebra {
    /// Path algebra of `quiver` modulo the ideal generated by `relations`,
    /// computed inside the span of paths of length at most `bound`.
    /// The bound must satisfy: every path of length `bound` lies in the ideal.
    pub fn from_bound_quiver(
        field: Field,
        quiver: &Quiver,
        relations: &[Relation],
        bound: usize,
    ) -> Result<AlgebraRef> {
        quiver.validate()?;
        if bound == 0 {
            return Err(Error::NotNilpotent(0));
        }
        let target_of = |p: &Path| p.arrows.last().map_or(p.source, |&a| quiver.arrows[a].target);

        // enumerate paths by length
        let mut paths: Vec<Path> = (0..quiver.vertices).map(|v| Path { source: v, arrows: vec![] }).collect();
        let mut frontier = paths.clone();
        for _ in 0..bound {
            let mut next = Vec::new();
            for p in &frontier {
                let t = target_of(p);
                for (ai, a) in quiver.arrows.iter().enumerate() {
                    if a.source == t {
                        let mut arrows = p.arrows.clone();
                        arrows.push(ai);
                        next.push(Path { source: p.source, arrows });
                    }
                }
            }
            paths.extend(next.iter().cloned());
            frontier = next;
        }
        let index: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let npaths = paths.len();

        // parse relations
        let mut parsed: Vec<Vec<(u32, Path)>> = Vec::new();
        for rel in relations {
            let mut terms = Vec::new();
            for (coef, labels) in &rel.terms {
                if labels.len() < 2 {
                    return Err(Error::NonAdmissible(format!(
                        "path {:?} has length {} < 2",
                        labels,
                        labels.len()
                    )));
                }
                let mut arrows: Vec<usize> = Vec::new();
                for l in labels {
                    let ai = quiver
                        .arrow_index(l)
                        .ok_or_else(|| Error::NonAdmissible(format!("unknown arrow {l}")))?;
                    if let Some(&prev) = arrows.last() {
                        if quiver.arrows[prev].target != quiver.arrows[ai].source {
                            return Err(Error::NonAdmissible(format!("path {:?} is not composable", labels)));
                        }
                    }
                    arrows.push(ai);
                }
                let c = field.reduce(*coef);
                if c != 0 {
                    terms.push((c, Path { source: quiver.arrows[arrows[0]].source, arrows }));
                }
            }
            if !terms.is_empty() {
                parsed.push(terms);
            }
        }

        // columns ordered longest path first, so standard monomials prefer short paths
        let mut order: Vec<usize> = (0..npaths).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(paths[i].arrows.len()));
        let mut col_of = vec![0; npaths];
        for (c, &i) in order.iter().enumerate() {
            col_of[i] = c;
        }

        let mut rows: Vec<Vec<u32>> = Vec::new();
        for rel in &parsed {
            for u in &paths {
                for v in &paths {
                    let mut row = vec![0u32; npaths];
                    let mut any = false;
                    for (c, p) in rel {
                        if target_of(u) != p.source || target_of(p) != v.source {
                            continue;
                        }
                        let len = u.arrows.len() + p.arrows.len() + v.arrows.len();
                        if len > bound {
                            continue;
                        }
                        let mut arrows = u.arrows.clone();
                        arrows.extend(&p.arrows);
                        arrows.extend(&v.arrows);
                        let idx = index[&Path { source: u.source, arrows }];
                        let col = col_of[idx];
                        row[col] = field.add(row[col], *c);
                        any = true;
                    }
                    if any && row.iter().any(|&x| x != 0) {
                        rows.push(row);
                    }
                }
            }
        }
        let ideal = Matrix::from_fn(field, rows.len(), npaths, |r, c| rows[r][c]);
        let red = ideal.rref();
        let red_m = &red.matrix;
        let pivots = red.pivots.clone();

        let normal_form = |mut x: Vec<u32>| -> Vec<u32> {
            for (i, &c) in pivots.iter().enumerate() {
                let coef = x[c];
                if coef != 0 {
                    let neg = field.neg(coef);
                    for (j, xj) in x.iter_mut().enumerate() {
                        *xj = field.add(*xj, field.mul(neg, red_m.get(i, j)));
                    }
                }
            }
            x
        };

        for (i, p) in paths.iter().enumerate() {
            if p.arrows.len() == bound {
                let mut x = vec![0; npaths];
                x[col_of[i]] = 1;
                if normal_form(x).iter().any(|&v| v != 0) {
                    return Err(Error::NotNilpotent(bound));
                }
            }
        }

        let mut is_pivot = vec![false; npaths];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        // standard monomials, in path enumeration order (length ascending)
        let standard: Vec<usize> = (0..npaths).filter(|&i| !is_pivot[col_of[i]]).collect();
        let basis_of_col: HashMap<usize, usize> =
            standard.iter().enumerate().map(|(b, &i)| (col_of[i], b)).collect();
        let dim = standard.len();

        let coords = |x: Vec<u32>| -> Vec<u32> {
            let nf = normal_form(x);
            let mut out = vec![0; dim];
            for (c, v) in nf.into_iter().enumerate() {
                if v != 0 {
                    out[basis_of_col[&c]] = v;
                }
            }
            out
        };

        let mut structure = vec![vec![vec![0u32; dim]; dim]; dim];
        for (bi, &pi) in standard.iter().enumerate() {
            for (bj, &pj) in standard.iter().enumerate() {
                let (p, q) = (&paths[pi], &paths[pj]);
                if target_of(p) != q.source {
                    continue;
                }
                if p.arrows.len() + q.arrows.len() > bound {
                    continue;
                }
                let mut arrows = p.arrows.clone();
                arrows.extend(&q.arrows);
                let idx = index[&Path { source: p.source, arrows }];
                let mut x = vec![0; npaths];
                x[col_of[idx]] = 1;
                structure[bi][bj] = coords(x);
            }
        }

        let labels: Vec<String> = standard
            .iter()
            .map(|&i| {
                let p = &paths[i];
                if p.arrows.is_empty() {
                    format!("e{}", p.source)
                } else {
                    p.arrows.iter().map(|&a| quiver.arrows[a].label.as_str()).collect::<Vec<_>>().join(".")
                }
            })
            .collect();
        let idempotents: Vec<usize> = (0..quiver.vertices).collect();
        let mut unit = vec![0; dim];
        for &e in &idempotents {
            unit[e] = 1;
        }
        let arrows_b: Vec<usize> =
            (0..dim).filter(|&b| paths[standard[b]].arrows.len() == 1).collect();
        let radical: Vec<usize> = (0..dim).filter(|&b| !paths[standard[b]].arrows.is_empty()).collect();
        let endpoints = standard.iter().map(|&i| (paths[i].source, target_of(&paths[i]))).collect();
        let mut generators = idempotents.clone();
        generators.extend(&arrows_b);

        Ok(Arc::new(Algebra {
            field,
            dim,
            labels,
            structure,
            unit,
            provenance: Some(Provenance { idempotents, arrows: arrows_b, radical, endpoints }),
            presentation: Some(QuiverPresentation {
                quiver: quiver.clone(),
                relations: relations.to_vec(),
                nilpotency_bound: bound,
            }),
            generators,
            radical: OnceLock::new(),
            self_injective: OnceLock::new(),
        }))
    }

    /// Raw structure constants: `structure[i][j]` is the coordinate vector of `b_i * b_j`.
    /// Only shapes are validated here; use [`Algebra::check`] for the algebra laws.
    pub fn from_structure(
        field: Field,
        unit: Vec<u32>,
        structure: Vec<Vec<Vec<u32>>>,
        labels: Option<Vec<String>>,
    ) -> Result<AlgebraRef> {
        let dim = unit.len();
        if structure.len() != dim
            || structure.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim))
        {
            return Err(Error::InvalidAlgebra(format!("structure constants must be {dim}x{dim}x{dim}")));
        }
        let p = field.p();
        let structure = structure
            .into_iter()
            .map(|r| r.into_iter().map(|v| v.into_iter().map(|x| x % p).collect()).collect())
            .collect();
        let unit: Vec<u32> = unit.into_iter().map(|x| x % p).collect();
        let labels = labels.unwrap_or_else(|| (0..dim).map(|i| format!("b{i}")).collect());
        if labels.len() != dim {
            return Err(Error::InvalidAlgebra("label count differs from dimension".into()));
        }
        let mut a = Algebra {
            field,
            dim,
            labels,
            structure,
            unit,
            provenance: None,
            presentation: None,
            generators: vec![],
            radical: OnceLock::new(),
            self_injective: OnceLock::new(),
        };
        a.generators = a.greedy_generators();
        Ok(Arc::new(a))
    }

    /// `from_structure` followed by a full law check.
    pub fn from_structure_checked(
        field: Field,
        unit: Vec<u32>,
        structure: Vec<Vec<Vec<u32>>>,
        labels: Option<Vec<String>>,
    ) -> Result<AlgebraRef> {
        let a = Self::from_structure(field, unit, structure, labels)?;
        let report = a.check();
        if !report.ok {
            return Err(Error::InvalidAlgebra(format!("{:?}", report.failures[0])));
        }
        Ok(a)
    }

    /// k[x]/(x^n) as a one-loop bound quiver algebra.
    pub fn truncated_polynomial(field: Field, n: usize) -> Result<AlgebraRef> {
        let q = Quiver::new(1, &[(0, 0, "x")])?;
        let rel = Relation::monomial(&vec!["x"; n]);
        Self::from_bound_quiver(field, &q, &[rel], n.max(1))
    }

    /// Path algebra of the A2 quiver `0 --a--> 1`.
    pub fn a2(field: Field) -> Result<AlgebraRef> {
        let q = Quiver::new(2, &[(0, 1, "a")])?;
        Self::from_bound_quiver(field, &q, &[], 2)
    }

    /// Group algebra k[C_n] on the basis 1, g, ..., g^(n-1), given by raw structure constants.
    pub fn cyclic_group_algebra(field: Field, n: usize) -> Result<AlgebraRef> {
        let mut structure = vec![vec![vec![0u32; n]; n]; n];
        for (i, row) in structure.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                v[(i + j) % n] = 1;
            }
        }
        let mut unit = vec![0; n];
        unit[0] = 1;
        let labels = (0..n).map(|i| if i == 0 { "1".to_string() } else { format!("g^{i}") }).collect();
        Self::from_structure(field, unit, structure, Some(labels))
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn unit(&self) -> &[u32] {
        &self.unit
    }
    pub fn product(&self, i: usize, j: usize) -> &[u32] {
        &self.structure[i][j]
    }
    pub fn structure(&self) -> &Vec<Vec<Vec<u32>>> {
        &self.structure
    }
    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }
    pub fn presentation(&self) -> Option<&QuiverPresentation> {
        self.presentation.as_ref()
    }

    /// Basis indices generating the algebra together with the unit.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn same_as(&self, other: &Algebra) -> bool {
        std::ptr::eq(self, other) || self == other
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0u32; self.dim];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (o, &s) in out.iter_mut().zip(&self.structure[i][j]) {
                    if s != 0 {
                        *o = f.add(*o, f.mul(c, s));
                    }
                }
            }
        }
        out
    }

    /// Opposite algebra: same basis, `b_i *op b_j = b_j * b_i`.
    pub fn opposite(&self) -> AlgebraRef {
        let d = self.dim;
        let structure = (0..d).map(|i| (0..d).map(|j| self.structure[j][i].clone()).collect()).collect();
        let provenance = self.provenance.as_ref().map(|p| Provenance {
            endpoints: p.endpoints.iter().map(|&(s, t)| (t, s)).collect(),
            ..p.clone()
        });
        Arc::new(Algebra {
            field: self.field,
            dim: d,
            labels: self.labels.clone(),
            structure,
            unit: self.unit.clone(),
            provenance,
            presentation: None,
            generators: self.generators.clone(),
            radical: OnceLock::new(),
            self_injective: OnceLock::new(),
        })
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.structure[i][j] == self.structure[j][i]))
    }

    /// Basis of the Jacobson radical when it is computable: arrow paths for bound quiver
    /// algebras, nilpotent elements (kernel of an iterated Frobenius) for commutative ones.
    pub fn radical_basis(&self) -> Option<&[Vec<u32>]> {
        self.radical
            .get_or_init(|| {
                if let Some(p) = &self.provenance {
                    return Some(p.radical.iter().map(|&b| self.basis_vector(b)).collect());
                }
                if !self.is_commutative() {
                    return None;
                }
                let f = self.field;
                let frob = |x: &[u32]| {
                    let mut y = x.to_vec();
                    for _ in 1..f.p() {
                        y = self.mul(&y, x);
                    }
                    y
                };
                let cols: Vec<Vec<u32>> = (0..self.dim).map(|i| frob(&self.basis_vector(i))).collect();
                let phi = Matrix::from_fn(f, self.dim, self.dim, |r, c| cols[c][r]);
                let mut power = Matrix::identity(f, self.dim);
                let mut reach = 1;
                while reach < self.dim {
                    power = phi.mul(&power);
                    reach *= f.p() as usize;
                }
                let power = phi.mul(&power);
                let ker = power.kernel_basis();
                Some((0..ker.rows()).map(|r| ker.row(r).to_vec()).collect())
            })
            .as_deref()
    }

    /// Whether `A / rad A` is the ground field.
    pub fn is_split_local(&self) -> bool {
        self.radical_basis().is_some_and(|r| r.len() + 1 == self.dim)
    }

    pub(crate) fn self_injective_cache(&self) -> &OnceLock<bool> {
        &self.self_injective
    }

    fn span_rank(&self, vecs: &[Vec<u32>]) -> usize {
        Matrix::from_fn(self.field, vecs.len(), self.dim, |r, c| vecs[r][c]).rank()
    }

    /// Basis (as vectors) of the subalgebra generated by `seeds` and the unit.
    pub fn generated_subalgebra(&self, seeds: &[Vec<u32>]) -> Vec<Vec<u32>> {
        let mut basis: Vec<Vec<u32>> = Vec::new();
        let push = |basis: &mut Vec<Vec<u32>>, v: Vec<u32>| {
            let r = self.span_rank(basis);
            basis.push(v);
            if self.span_rank(basis) == r {
                basis.pop();
                false
            } else {
                true
            }
        };
        push(&mut basis, self.unit.clone());
        for s in seeds {
            push(&mut basis, s.clone());
        }
        loop {
            let mut grew = false;
            let snapshot = basis.clone();
            for x in &snapshot {
                for y in &snapshot {
                    if push(&mut basis, self.mul(x, y)) {
                        grew = true;
                    }
                }
            }
            if !grew {
                return basis;
            }
        }
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.generated_subalgebra(&[]);
        for i in 0..self.dim {
            if span.len() == self.dim {
                break;
            }
            let b = self.basis_vector(i);
            let mut test = span.clone();
            test.push(b.clone());
            if self.span_rank(&test) > span.len() {
                gens.push(i);
                let seeds: Vec<Vec<u32>> = gens.iter().map(|&g| self.basis_vector(g)).collect();
                span = self.generated_subalgebra(&seeds);
            }
        }
        gens
    }

    /// Checks associativity, the unit laws and, with provenance, the idempotent and radical invariants.
    pub fn check(&self) -> AlgebraReport {
        let mut failures = Vec::new();
        let d = self.dim;
        'assoc: for i in 0..d {
            for j in 0..d {
                let ij = &self.structure[i][j];
                for k in 0..d {
                    let left = self.mul(ij, &self.basis_vector(k));
                    let right = self.mul(&self.basis_vector(i), &self.structure[j][k]);
                    if left != right {
                        failures.push(AlgebraFailure::Associativity { i, j, k });
                        break 'assoc;
                    }
                }
            }
        }
        for i in 0..d {
            let b = self.basis_vector(i);
            if self.mul(&self.unit, &b) != b {
                failures.push(AlgebraFailure::LeftUnit { i });
            }
            if self.mul(&b, &self.unit) != b {
                failures.push(AlgebraFailure::RightUnit { i });
            }
        }
        if let Some(prov) = &self.provenance {
            let f = self.field;
            let mut sum = vec![0; d];
            for (a, &i) in prov.idempotents.iter().enumerate() {
                sum[i] = f.add(sum[i], 1);
                for (b, &j) in prov.idempotents.iter().enumerate() {
                    let expect = if a == b { self.basis_vector(i) } else { vec![0; d] };
                    if self.structure[i][j] != expect {
                        failures.push(AlgebraFailure::IdempotentProduct { i, j });
                    }
                }
            }
            if sum != self.unit {
                failures.push(AlgebraFailure::IdempotentSum);
            }
            let rad: Vec<Vec<u32>> = prov.radical.iter().map(|&r| self.basis_vector(r)).collect();
            let in_rad = |v: &[u32]| (0..d).all(|c| v[c] == 0 || prov.radical.contains(&c));
            'ideal: for &r in &prov.radical {
                for j in 0..d {
                    if !in_rad(&self.structure[r][j]) || !in_rad(&self.structure[j][r]) {
                        failures.push(AlgebraFailure::RadicalNotIdeal { i: r, j });
                        break 'ideal;
                    }
                }
            }
            // rad^k spans shrink to zero within dim steps
            let mut power = rad.clone();
            for _ in 0..=d {
                if power.iter().all(|v| v.iter().all(|&x| x == 0)) {
                    break;
                }
                let mut next = Vec::new();
                for x in &power {
                    for y in &rad {
                        let z = self.mul(x, y);
                        if z.iter().any(|&c| c != 0) {
                            next.push(z);
                        }
                    }
                }
                power = next;
                if power.len() > 4 * d * d {
                    let m = Matrix::from_fn(self.field, power.len(), d, |r, c| power[r][c]);
                    power = m.rref().matrix.to_rows().into_iter().filter(|r| r.iter().any(|&x| x != 0)).collect();
                }
            }
            if power.iter().any(|v| v.iter().any(|&x| x != 0)) {
                failures.push(AlgebraFailure::RadicalNotNilpotent);
            }
        }
        AlgebraReport { ok: failures.is_empty(), failures }
    }

    /// Number of quiver vertices, when provenance is present.
    pub fn vertex_count(&self) -> Option<usize> {
        self.provenance.as_ref().map(|p| p.idempotents.len())
    }
}

/// A unital subalgebra of a parent algebra, given by a spanning set of coordinate vectors.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    parent: AlgebraRef,
    basis: Vec<Vec<u32>>,
}

impl Subalgebra {
    pub fn new(parent: AlgebraRef, basis: Vec<Vec<u32>>) -> Result<Self> {
        let d = parent.dim();
        if basis.iter().any(|v| v.len() != d) {
            return Err(Error::InvalidAlgebra("subalgebra vector has wrong length".into()));
        }
        let p = parent.field().p();
        let basis: Vec<Vec<u32>> = basis.into_iter().map(|v| v.into_iter().map(|x| x % p).collect()).collect();
        let r = parent.span_rank(&basis);
        let mut with_unit = basis.clone();
        with_unit.push(parent.unit().to_vec());
        if parent.span_rank(&with_unit) != r {
            return Err(Error::InvalidAlgebra("subalgebra does not contain the unit".into()));
        }
        for x in &basis {
            for y in &basis {
                let mut t = basis.clone();
                t.push(parent.mul(x, y));
                if parent.span_rank(&t) != r {
                    return Err(Error::InvalidAlgebra("subalgebra is not closed under multiplication".into()));
                }
            }
        }
        // keep an independent spanning set
        let m = Matrix::from_fn(parent.field(), basis.len(), d, |r, c| basis[r][c]);
        let basis = m.rref().matrix.to_rows().into_iter().filter(|v| v.iter().any(|&x| x != 0)).collect();
        Ok(Subalgebra { parent, basis })
    }

    pub fn scalars(parent: AlgebraRef) -> Self {
        let unit = parent.unit().to_vec();
        Subalgebra { parent, basis: vec![unit] }
    }

    pub fn whole(parent: AlgebraRef) -> Self {
        let basis = (0..parent.dim()).map(|i| parent.basis_vector(i)).collect();
        Subalgebra { parent, basis }
    }

    pub fn parent(&self) -> &AlgebraRef {
        &self.parent
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_whole(&self) -> bool {
        self.basis.len() == self.parent.dim()
    }
}
