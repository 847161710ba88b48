//! JSON interchange: `algebra.v1`, `module.v1`, `morphism.v1`, `class.v1`, `simplicial.v1`, `tower.v1`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{Algebra, AlgebraRef, Quiver, Relation, Subalgebra};
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};
use crate::hocolim::{SimplicialModule, Tower};
use crate::modcat::{Module, Morphism};
use crate::relclass::{AllowableClass, ClassKind};

pub type MatrixJson = Vec<Vec<i64>>;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FieldJson {
    pub p: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct QuiverJson {
    pub vertices: usize,
    pub arrows: Vec<(usize, usize, String)>,
}

/// A monomial `["a", "b"]` or a combination `[[1, ["a", "b"]], [-1, ["c"]]]`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum RelationJson {
    Monomial(Vec<String>),
    Terms(Vec<(i64, Vec<String>)>),
}

impl RelationJson {
    fn to_relation(&self) -> Relation {
        match self {
            RelationJson::Monomial(p) => Relation { terms: vec![(1, p.clone())] },
            RelationJson::Terms(t) => Relation { terms: t.clone() },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum AlgebraJson {
    Quiver {
        field: FieldJson,
        quiver: QuiverJson,
        #[serde(default)]
        relations: Vec<RelationJson>,
        nilpotency_bound: usize,
    },
    Raw {
        field: FieldJson,
        dim: usize,
        unit: Vec<i64>,
        structure: Vec<Vec<Vec<i64>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ModuleJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra_ref: Option<Value>,
    pub dim: usize,
    pub action: Vec<MatrixJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MorphismJson {
    pub source: ModuleJson,
    pub target: ModuleJson,
    pub matrix: MatrixJson,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SubalgebraJson {
    pub basis: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ClassJson {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subalgebra: Option<SubalgebraJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<ModuleJson>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SimplicialJson {
    pub truncation: usize,
    pub modules: Vec<ModuleJson>,
    pub faces: Vec<Vec<MatrixJson>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TowerJson {
    pub objects: Vec<ModuleJson>,
    pub maps: Vec<MatrixJson>,
}

pub fn matrix_to_json(m: &Matrix) -> MatrixJson {
    m.to_rows().into_iter().map(|r| r.into_iter().map(i64::from).collect()).collect()
}

pub fn matrix_from_json(f: Field, rows: usize, cols: usize, j: &MatrixJson) -> Result<Matrix> {
    if j.len() != rows || j.iter().any(|r| r.len() != cols) {
        return Err(Error::Schema(format!("expected a {rows}x{cols} matrix")));
    }
    Matrix::from_rows_shaped(f, rows, cols, j)
}

fn reduce(f: Field, v: &[i64]) -> Vec<u32> {
    let p = f.p() as i64;
    v.iter().map(|&x| x.rem_euclid(p) as u32).collect()
}

pub fn algebra_to_json(a: &Algebra) -> AlgebraJson {
    let field = FieldJson { p: a.field().p() };
    match a.presentation() {
        Some(pres) => AlgebraJson::Quiver {
            field,
            quiver: QuiverJson {
                vertices: pres.quiver.vertices,
                arrows: pres.quiver.arrows.iter().map(|r| (r.source, r.target, r.label.clone())).collect(),
            },
            relations: pres.relations.iter().map(|r| RelationJson::Terms(r.terms.clone())).collect(),
            nilpotency_bound: pres.nilpotency_bound,
        },
        None => AlgebraJson::Raw {
            field,
            dim: a.dim(),
            unit: a.unit().iter().map(|&x| i64::from(x)).collect(),
            structure: a
                .structure()
                .iter()
                .map(|r| r.iter().map(|v| v.iter().map(|&x| i64::from(x)).collect()).collect())
                .collect(),
            labels: Some(a.labels().to_vec()),
        },
    }
}

pub fn algebra_from_json(j: &AlgebraJson) -> Result<AlgebraRef> {
    match j {
        AlgebraJson::Quiver { field, quiver, relations, nilpotency_bound } => {
            let f = Field::new(field.p)?;
            let arrows: Vec<(usize, usize, &str)> =
                quiver.arrows.iter().map(|(s, t, l)| (*s, *t, l.as_str())).collect();
            let q = Quiver::new(quiver.vertices, &arrows)?;
            let rels: Vec<Relation> = relations.iter().map(RelationJson::to_relation).collect();
            Algebra::from_bound_quiver(f, &q, &rels, *nilpotency_bound)
        }
        AlgebraJson::Raw { field, dim, unit, structure, labels } => {
            let f = Field::new(field.p)?;
            if unit.len() != *dim {
                return Err(Error::Schema("unit length differs from dim".into()));
            }
            let s = structure.iter().map(|r| r.iter().map(|v| reduce(f, v)).collect()).collect();
            Algebra::from_structure_checked(f, reduce(f, unit), s, labels.clone())
        }
    }
}

pub fn module_to_json(m: &Module, with_algebra: bool) -> ModuleJson {
    ModuleJson {
        algebra_ref: with_algebra.then(|| serde_json::to_value(algebra_to_json(m.algebra())).expect("serializable")),
        dim: m.dim(),
        action: m.actions().iter().map(matrix_to_json).collect(),
    }
}

/// Decodes a module over `a`. An embedded `algebra_ref` object must describe the same algebra.
pub fn module_from_json(j: &ModuleJson, a: &AlgebraRef) -> Result<Module> {
    if let Some(Value::Object(_)) = &j.algebra_ref {
        let spec: AlgebraJson = serde_json::from_value(j.algebra_ref.clone().expect("present"))?;
        if !algebra_from_json(&spec)?.same_as(a) {
            return Err(Error::AlgebraMismatch);
        }
    }
    if j.action.len() != a.dim() {
        return Err(Error::Schema(format!("need {} action matrices, got {}", a.dim(), j.action.len())));
    }
    let action = j.action.iter().map(|m| matrix_from_json(a.field(), j.dim, j.dim, m)).collect::<Result<Vec<_>>>()?;
    Module::new(a.clone(), j.dim, action)
}

pub fn morphism_to_json(f: &Morphism) -> MorphismJson {
    MorphismJson {
        source: module_to_json(f.source(), false),
        target: module_to_json(f.target(), false),
        matrix: matrix_to_json(f.matrix()),
    }
}

pub fn morphism_from_json(j: &MorphismJson, a: &AlgebraRef) -> Result<Morphism> {
    let s = module_from_json(&j.source, a)?;
    let t = module_from_json(&j.target, a)?;
    let m = matrix_from_json(a.field(), t.dim(), s.dim(), &j.matrix)?;
    Morphism::new(s, t, m)
}

/// A map `source -> target` between already decoded modules.
pub fn matrix_morphism_from_json(j: &MatrixJson, s: &Module, t: &Module) -> Result<Morphism> {
    let m = matrix_from_json(s.field(), t.dim(), s.dim(), j)?;
    Morphism::new(s.clone(), t.clone(), m)
}

pub fn class_to_json(c: &AllowableClass) -> ClassJson {
    let (subalgebra, generators) = match c.kind() {
        ClassKind::Relative(b) => (
            Some(SubalgebraJson { basis: b.basis().iter().map(|v| v.iter().map(|&x| i64::from(x)).collect()).collect() }),
            None,
        ),
        ClassKind::Heller(gs) => (None, Some(gs.iter().map(|g| module_to_json(g, false)).collect())),
        _ => (None, None),
    };
    ClassJson { kind: c.name().to_string(), subalgebra, generators }
}

pub fn class_from_json(j: &ClassJson, a: &AlgebraRef) -> Result<AllowableClass> {
    match j.kind.as_str() {
        "absolute" => Ok(AllowableClass::absolute(a.clone())),
        "split" => Ok(AllowableClass::split(a.clone())),
        "relative" => {
            let sub = j.subalgebra.as_ref().ok_or_else(|| Error::Schema("relative class needs a subalgebra".into()))?;
            let basis = sub.basis.iter().map(|v| reduce(a.field(), v)).collect();
            Ok(AllowableClass::relative(Subalgebra::new(a.clone(), basis)?))
        }
        "heller" => {
            let gens = j.generators.as_ref().ok_or_else(|| Error::Schema("heller class needs generators".into()))?;
            let gens = gens.iter().map(|g| module_from_json(g, a)).collect::<Result<Vec<_>>>()?;
            AllowableClass::heller(a.clone(), gens)
        }
        other => Err(Error::Schema(format!("unknown class kind {other:?}"))),
    }
}

pub fn simplicial_to_json(s: &SimplicialModule) -> SimplicialJson {
    SimplicialJson {
        truncation: s.truncation(),
        modules: s.modules().iter().map(|m| module_to_json(m, false)).collect(),
        faces: s.faces().iter().map(|ds| ds.iter().map(|d| matrix_to_json(d.matrix())).collect()).collect(),
    }
}

pub fn simplicial_from_json(j: &SimplicialJson, a: &AlgebraRef) -> Result<SimplicialModule> {
    if j.modules.len() != j.truncation + 1 || j.faces.len() != j.truncation {
        return Err(Error::Schema("truncation disagrees with the module and face lists".into()));
    }
    let ms = j.modules.iter().map(|m| module_from_json(m, a)).collect::<Result<Vec<_>>>()?;
    let mut faces = Vec::new();
    for (k, ds) in j.faces.iter().enumerate() {
        let n = k + 1;
        let ds = ds.iter().map(|d| matrix_morphism_from_json(d, &ms[n], &ms[n - 1])).collect::<Result<Vec<_>>>()?;
        faces.push(ds);
    }
    SimplicialModule::new(ms, faces)
}

pub fn tower_to_json(t: &Tower) -> TowerJson {
    TowerJson {
        objects: t.objects().iter().map(|m| module_to_json(m, false)).collect(),
        maps: t.maps().iter().map(|m| matrix_to_json(m.matrix())).collect(),
    }
}

pub fn tower_from_json(j: &TowerJson, class: &AllowableClass) -> Result<Tower> {
    let a = class.algebra();
    let objs = j.objects.iter().map(|m| module_from_json(m, a)).collect::<Result<Vec<_>>>()?;
    if j.maps.len() + 1 != objs.len() {
        return Err(Error::Schema("a tower needs one map between consecutive objects".into()));
    }
    let maps = j
        .maps
        .iter()
        .enumerate()
        .map(|(i, m)| matrix_morphism_from_json(m, &objs[i], &objs[i + 1]))
        .collect::<Result<Vec<_>>>()?;
    Tower::new(class, objs, maps)
}
