use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use relhom::algebra::{Algebra, AlgebraRef};
use relhom::audit::{canonical_counterexample, weq2_audit, PD_BOUND};
use relhom::exactla::Field;
use relhom::hocolim::{factorize, homotopy_pushout, realization_tower, ConeFunctor};
use relhom::io::*;
use relhom::modcat::{Module, Morphism};
use relhom::relclass::AllowableClass;
use relhom::stable::{hilton_rees_certificate, is_stable_equivalence};

#[derive(Parser)]
#[command(name = "relhom", version, about = "Relative homological algebra over finite-dimensional algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Prime field for builtin algebras.
    #[arg(long, global = true, default_value_t = 2)]
    field: u32,
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 200)]
    trials: usize,
    /// Resolution length.
    #[arg(long, global = true, default_value_t = 4)]
    length: usize,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct Setting {
    /// Builtin (`a2`, `poly:N`, `cyclic:N`) or an `algebra.v1` file.
    #[arg(long, default_value = "a2")]
    algebra: String,
    /// `absolute`, `split`, or a `class.v1` file.
    #[arg(long, default_value = "absolute")]
    class: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// E-projective resolution of a module.
    Resolve {
        #[command(flatten)]
        setting: Setting,
        /// Builtin (`simple:V`, `projective:V`, `regular`, `trivial`, `zero`) or a `module.v1` file.
        #[arg(long)]
        module: String,
    },
    /// Dimension of Ext^n(X, M).
    Ext {
        #[command(flatten)]
        setting: Setting,
        #[arg(long)]
        module: String,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 1)]
        degree: usize,
    },
    /// Whether a map is a stable equivalence, with a stabilized isomorphism certificate.
    StableCheck {
        #[command(flatten)]
        setting: Setting,
        /// A `morphism.v1` file, `identity:MODULE` or `zero:MODULE:MODULE`.
        #[arg(long)]
        morphism: String,
    },
    /// Homotopy pushout of a cofibration `f` along `g`.
    Pushout {
        #[command(flatten)]
        setting: Setting,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Factor a map as a cofibration followed by a weak equivalence.
    Factorize {
        #[command(flatten)]
        setting: Setting,
        #[arg(long)]
        morphism: String,
    },
    /// Realization tower of a truncated simplicial module.
    Realize {
        #[command(flatten)]
        setting: Setting,
        /// A `simplicial.v1` file.
        #[arg(long)]
        simplicial: PathBuf,
    },
    /// Random Weq 2 audit.
    Audit {
        #[command(flatten)]
        setting: Setting,
        /// Append the canonical counterexample diagram when one exists.
        #[arg(long)]
        inject: bool,
    },
    /// The canonical counterexample from an object of projective dimension one.
    Counterexample {
        #[command(flatten)]
        setting: Setting,
    },
}

enum Failure {
    Input(String),
    Compute(String),
}

impl From<relhom::Error> for Failure {
    fn from(e: relhom::Error) -> Self {
        use relhom::Error as E;
        match e {
            E::NotPrime(_)
            | E::ShapeMismatch(_)
            | E::AlgebraMismatch
            | E::InvalidAlgebra(_)
            | E::NonAdmissible(_)
            | E::NotNilpotent(_)
            | E::InvalidModule(_)
            | E::InvalidMorphism(_)
            | E::FaceIdentity(_)
            | E::Schema(_)
            | E::Json(_) => Failure::Input(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

type Res<T> = Result<T, Failure>;

struct Report {
    text: String,
    json: Value,
    refuted: bool,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Res<T> {
    let s = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&s).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_n(s: &str) -> Res<usize> {
    s.parse().map_err(|_| Failure::Input(format!("expected a number, got {s:?}")))
}

fn load_algebra(spec: &str, p: u32) -> Res<AlgebraRef> {
    let field = Field::new(p)?;
    let a = match spec.split_once(':') {
        _ if spec == "a2" => Algebra::a2(field)?,
        Some(("poly", n)) => Algebra::truncated_polynomial(field, parse_n(n)?)?,
        Some(("cyclic", n)) => Algebra::cyclic_group_algebra(field, parse_n(n)?)?,
        _ => algebra_from_json(&read_json::<AlgebraJson>(Path::new(spec))?)?,
    };
    Ok(a)
}

fn load_class(spec: &str, a: &AlgebraRef) -> Res<AllowableClass> {
    Ok(match spec {
        "absolute" => AllowableClass::absolute(a.clone()),
        "split" => AllowableClass::split(a.clone()),
        path => class_from_json(&read_json::<ClassJson>(Path::new(path))?, a)?,
    })
}

fn load_module(spec: &str, a: &AlgebraRef) -> Res<Module> {
    Ok(match spec.split_once(':') {
        _ if spec == "regular" => Module::regular(a.clone()),
        _ if spec == "zero" => Module::zero(a.clone()),
        _ if spec == "trivial" => {
            if a.provenance().is_some() {
                Module::simple(a, 0)?
            } else {
                Module::one_dimensional(a, 8)?
                    .into_iter()
                    .next()
                    .ok_or_else(|| Failure::Input("algebra has no one-dimensional module".into()))?
            }
        }
        Some(("simple", v)) => Module::simple(a, parse_n(v)?)?,
        Some(("projective", v)) => Module::indecomposable_projective(a, parse_n(v)?)?.0,
        _ => module_from_json(&read_json::<ModuleJson>(Path::new(spec))?, a)?,
    })
}

fn load_morphism(spec: &str, a: &AlgebraRef) -> Res<Morphism> {
    if let Some(m) = spec.strip_prefix("identity:") {
        return Ok(Morphism::identity(&load_module(m, a)?));
    }
    if let Some(rest) = spec.strip_prefix("zero:") {
        for (i, _) in rest.match_indices(':') {
            if let (Ok(s), Ok(t)) = (load_module(&rest[..i], a), load_module(&rest[i + 1..], a)) {
                return Ok(Morphism::zero(&s, &t));
            }
        }
        return Err(Failure::Input(format!("expected zero:SOURCE:TARGET, got {spec:?}")));
    }
    Ok(morphism_from_json(&read_json::<MorphismJson>(Path::new(spec))?, a)?)
}

fn setup(s: &Setting, p: u32) -> Res<(AlgebraRef, AllowableClass)> {
    let a = load_algebra(&s.algebra, p)?;
    let c = load_class(&s.class, &a)?;
    Ok((a, c))
}

fn run(cli: &Cli) -> Res<Report> {
    let p = cli.field;
    match &cli.cmd {
        Cmd::Resolve { setting, module } => {
            let (a, class) = setup(setting, p)?;
            let x = load_module(module, &a)?;
            let res = class.resolution(&x, cli.length)?;
            let dims = res.stage_dims();
            let pd = class.projective_dimension(&x, PD_BOUND)?;
            let len = res.length();
            let modules: Vec<ModuleJson> = (0..res.stages()).map(|i| module_to_json(&res.module(i), false)).collect();
            let diffs: Vec<MatrixJson> = (1..res.stages()).map(|i| matrix_to_json(res.differential(i).matrix())).collect();
            let mut text = format!("stage dimensions: {dims:?}\n");
            match len {
                Some(n) => text += &format!("resolution length: {n}\n"),
                None => text += &format!("no finite resolution within {} stages\n", cli.length),
            }
            text += &format!("projective dimension: {pd}");
            Ok(Report {
                text,
                json: json!({"stage_dims": dims, "length": len, "projective_dimension": pd, "modules": modules, "differentials": diffs}),
                refuted: false,
            })
        }
        Cmd::Ext { setting, module, target, degree } => {
            let (a, class) = setup(setting, p)?;
            let x = load_module(module, &a)?;
            let m = load_module(target, &a)?;
            let e = class.ext(&x, &m, *degree)?;
            Ok(Report {
                text: format!("dim Ext^{degree} = {}", e.dim),
                json: json!({"degree": degree, "dim": e.dim}),
                refuted: false,
            })
        }
        Cmd::StableCheck { setting, morphism } => {
            let (a, class) = setup(setting, p)?;
            let f = load_morphism(morphism, &a)?;
            let yes = is_stable_equivalence(&class, &f)?;
            let cert = if yes { hilton_rees_certificate(&class, &f)? } else { None };
            let cert_json = cert.as_ref().map(|c| {
                json!({"p": module_to_json(&c.p, false), "q": module_to_json(&c.q, false), "iso": matrix_to_json(c.iso.matrix())})
            });
            let mut text = format!("stable equivalence: {}", if yes { "yes" } else { "no" });
            if let Some(c) = &cert {
                text += &format!("\ncertificate: X + P = Y + Q with dim P = {}, dim Q = {}", c.p.dim(), c.q.dim());
            }
            Ok(Report { text, json: json!({"stable_equivalence": yes, "certificate": cert_json}), refuted: !yes })
        }
        Cmd::Pushout { setting, f, g } => {
            let (a, class) = setup(setting, p)?;
            let f = load_morphism(f, &a)?;
            let g = load_morphism(g, &a)?;
            let sq = homotopy_pushout(&class, &f, &g)?;
            let text = format!(
                "pushout dimension: {}\ng weak equivalence: {}\nleg weak equivalence: {}",
                sq.object().dim(),
                sq.g_is_weak_equivalence,
                sq.left_proper.map_or("n/a".to_string(), |b| b.to_string())
            );
            Ok(Report {
                text,
                json: json!({
                    "object": module_to_json(sq.object(), false),
                    "leg_y": matrix_to_json(sq.pushout.leg_y.matrix()),
                    "leg_z": matrix_to_json(sq.pushout.leg_z.matrix()),
                    "g_is_weak_equivalence": sq.g_is_weak_equivalence,
                    "left_proper": sq.left_proper,
                }),
                refuted: false,
            })
        }
        Cmd::Factorize { setting, morphism } => {
            let (a, class) = setup(setting, p)?;
            let f = load_morphism(morphism, &a)?;
            let cone = ConeFunctor::default_for(&class);
            let fac = factorize(&cone, &f)?;
            let (_, agrees) = fac.pushout_comparison(&class)?;
            let text = format!(
                "middle dimension: {}\ncofibration: {}\nweak equivalence: {}\npushout comparison is a weak equivalence: {agrees}",
                fac.middle.module.dim(),
                class.is_mono(&fac.f0)?,
                is_stable_equivalence(&class, &fac.f1)?
            );
            Ok(Report {
                text,
                json: json!({
                    "middle": module_to_json(&fac.middle.module, false),
                    "f0": matrix_to_json(fac.f0.matrix()),
                    "f1": matrix_to_json(fac.f1.matrix()),
                    "comparison_weak_equivalence": agrees,
                }),
                refuted: false,
            })
        }
        Cmd::Realize { setting, simplicial } => {
            let (a, class) = setup(setting, p)?;
            let s = simplicial_from_json(&read_json::<SimplicialJson>(simplicial)?, &a)?;
            let cone = ConeFunctor::default_for(&class);
            let rt = realization_tower(&cone, &s)?;
            let dims = rt.stage_dims();
            let proj = class.is_projective(rt.colimit())?;
            Ok(Report {
                text: format!("stage dimensions: {dims:?}\nrealization dimension: {}\nrealization projective: {proj}", rt.colimit().dim()),
                json: json!({"stage_dims": dims, "tower": tower_to_json(&rt.tower), "realization": module_to_json(rt.colimit(), false)}),
                refuted: false,
            })
        }
        Cmd::Audit { setting, inject } => {
            let (_, class) = setup(setting, p)?;
            let r = weq2_audit(&class, cli.trials, cli.seed, *inject)?;
            let n = r.violation_count();
            Ok(Report {
                text: format!("{}: {} trials, seed {}, {}", r.scenario, r.trials, r.seed, r.verdict),
                json: serde_json::to_value(&r).map_err(|e| Failure::Compute(e.to_string()))?,
                refuted: n > 0,
            })
        }
        Cmd::Counterexample { setting } => {
            let (_, class) = setup(setting, p)?;
            match canonical_counterexample(&class)? {
                Some(b) => {
                    let j = b.to_json()?;
                    let text = format!(
                        "X of projective dimension {} (dim {}), resolution 0 -> P1 -> P0 -> X -> 0 with dims {} and {}\n\
                         pushout map: dim {} -> dim {}\nExt^1 obstruction: dim Ext^1(X, M) = {}\nverdict: {}",
                        j.x_pd,
                        b.x.dim(),
                        b.s.source().dim(),
                        b.cover.source().dim(),
                        b.top_pushout().dim(),
                        b.bottom_pushout().dim(),
                        b.obstruction.ext_x,
                        b.verdict()
                    );
                    Ok(Report {
                        text,
                        json: serde_json::to_value(&j).map_err(|e| Failure::Compute(e.to_string()))?,
                        refuted: false,
                    })
                }
                None => Ok(Report {
                    text: format!("no counterexample: every suite module has dimension 0 or above {PD_BOUND}"),
                    json: json!({"schema": "counterexample.v1", "bundle": null}),
                    refuted: true,
                }),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            let out = if cli.json { serde_json::to_string_pretty(&r.json).expect("serializable") } else { r.text };
            println!("{out}");
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &out) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(u8::from(r.refuted))
        }
        Err(Failure::Input(m)) => {
            eprintln!("input error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(m)) => {
            eprintln!("computation error: {m}");
            ExitCode::from(3)
        }
    }
}
