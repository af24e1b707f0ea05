//! Command-line front end for the Bredon normal-form engine.

mod input;
mod render;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bredon::catalog::catalog_list;
use bredon::localization::real_manifold_validate;
use bredon::{
    classify, enumerate_decompositions, fixed_poincare_polynomial, forgetful_image_dims, hodge_birank_check,
    hodge_expressive_check, krasnov_predict, pd_symmetric, rho_localize, smith_thom_report, tau_localize,
    threefold_predict, BivariatePolynomial,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use input::{load_constraints, load_module, InputError, LoadedModule};

#[derive(Parser)]
#[command(name = "bredon", version, about = "Normal forms of RO(C2)-graded Bredon cohomology with F2 coefficients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Args)]
struct Source {
    /// Catalog entry name (see `bredon catalog`).
    #[arg(long, conflicts_with = "module")]
    catalog: Option<String>,
    /// Catalog parameter, repeatable: --param n=3.
    #[arg(long = "param", value_name = "K=V")]
    params: Vec<String>,
    /// Module JSON file: {"free":[[p,q,m],...],"antipodal":[[r,n,m],...]}.
    #[arg(long)]
    module: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

impl Source {
    fn load(&self) -> Result<LoadedModule, InputError> {
        load_module(self.catalog.as_deref(), &self.params, self.module.as_deref())
    }
}

#[derive(Args)]
struct Manifold {
    /// Complex dimension n; defaults to the catalog entry's dimension.
    #[arg(long)]
    dim: Option<i64>,
    #[arg(long)]
    fixed_point: bool,
    #[arg(long)]
    connected: bool,
}

#[derive(Subcommand)]
enum Command {
    /// List catalog entries, or show one with --catalog.
    Catalog {
        #[arg(long)]
        catalog: Option<String>,
        #[arg(long = "param", value_name = "K=V")]
        params: Vec<String>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Print the module (canonical JSON with --format json).
    Show {
        #[command(flatten)]
        source: Source,
        /// Same as --format json.
        #[arg(long)]
        json: bool,
    },
    /// M, GM or NEITHER.
    Classify(Source),
    /// Classification, Smith-Thom totals and every localization.
    Report(Source),
    /// Betti numbers of the fixed locus.
    Fixed(Source),
    /// Borel cohomology as an F2[z]-module.
    Borel(Source),
    /// Singular cohomology with its involution.
    Singular(Source),
    /// Dimensions of the image of the forgetful map.
    Image(Source),
    /// The bigraded rank polynomial R(u, v).
    Rankpoly(Source),
    /// Poincare-duality symmetry of the ranks.
    #[command(name = "pd-check")]
    PdCheck {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        dim: Option<i64>,
    },
    /// Necessary conditions for the cohomology of a Real manifold.
    Validate {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        manifold: Manifold,
    },
    /// Hodge-expressivity and the birank identity.
    Hodge {
        #[command(flatten)]
        source: Source,
        /// Hodge polynomial, e.g. "1 + u^2 + v^2 + 20uv + u^2v^2"; defaults to the catalog's.
        #[arg(long)]
        hodge: Option<String>,
        /// Whether integral cohomology is torsion-free.
        #[arg(long, value_name = "BOOL")]
        torsion_free: Option<bool>,
    },
    /// Enumerate every decomposition meeting a constraint file; one JSON line each.
    Solve {
        #[arg(long)]
        constraints: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Which GM criteria apply to a constraint file.
    Predict {
        #[arg(long)]
        constraints: PathBuf,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

/// What a command produced: the text to print and whether its check passed.
struct Outcome {
    text: String,
    passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, passed: true }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    format!("{}\n", serde_json::to_string(value).expect("report serialization"))
}

fn emit<T: Serialize>(format: Format, value: &T, table: impl FnOnce() -> String) -> Outcome {
    Outcome::ok(match format {
        Format::Json => to_json(value),
        Format::Table => table(),
    })
}

fn dimension(explicit: Option<i64>, loaded: &LoadedModule) -> Result<i64, InputError> {
    explicit
        .or_else(|| loaded.entry.as_ref().and_then(|e| e.metadata.dimension))
        .ok_or_else(|| InputError::Usage("--dim is required for this input".into()))
}

fn run(command: Command) -> Result<Outcome, InputError> {
    Ok(match command {
        Command::Catalog { catalog: None, format, .. } => {
            let list = catalog_list();
            emit(format, &list, || {
                let mut out = String::new();
                for e in &list {
                    let params: Vec<&str> = e.parameters.iter().map(|p| p.name).collect();
                    out.push_str(&format!("{:<24} [{}]  {}\n", e.name, params.join(", "), e.description));
                }
                out
            })
        }
        Command::Catalog { catalog: Some(name), params, format } => {
            let loaded = load_module(Some(&name), &params, None)?;
            let entry = loaded.entry.expect("catalog entries carry metadata");
            emit(format, &entry, || {
                let m = &entry.metadata;
                let mut out = format!("{} {:?}\n{}\n", entry.name, entry.parameters, entry.module);
                out.push_str(&format!(
                    "dimension {:?}, fixed point {}, connected {}, Real manifold {}, class {}\n",
                    m.dimension, m.has_fixed_point, m.connected, m.is_real_manifold, m.expected_class
                ));
                if let Some(h) = &m.hodge_polynomial {
                    out.push_str(&format!("Hodge polynomial {h}\n"));
                }
                if !m.notes.is_empty() {
                    out.push_str(&format!("note: {}\n", m.notes));
                }
                out
            })
        }
        Command::Show { source, json } => {
            let loaded = source.load()?;
            if json || source.format == Format::Json {
                Outcome::ok(format!("{}\n", loaded.module.to_canonical_json()))
            } else {
                Outcome::ok(format!("{}\n{}", loaded.module, render::rank_diagram(&loaded.module)))
            }
        }
        Command::Classify(source) => {
            let m = source.load()?.module;
            let class = classify(&m);
            emit(source.format, &class, || format!("{class}\n"))
        }
        Command::Report(source) => {
            let m = source.load()?.module;
            let st = smith_thom_report(&m).map_err(|e| InputError::Usage(e.to_string()))?;
            let fixed_poly = fixed_poincare_polynomial(&m).map_err(|e| InputError::Usage(e.to_string()))?;
            let (fixed, borel, singular, image) =
                (rho_localize(&m), tau_localize(&m), bredon::underlying_singular(&m), forgetful_image_dims(&m));
            let report = json!({
                "module": m,
                "class": st.class,
                "smith_thom": st,
                "fixed": fixed,
                "fixed_poincare": fixed_poly.to_string(),
                "borel": borel,
                "singular": singular,
                "image": image,
            });
            emit(source.format, &report, || {
                format!(
                    "{m}\nclass {}\n{}fixed Poincare polynomial {fixed_poly}\nBorel {}singular cohomology\n{}{}",
                    st.class,
                    render::smith_thom_table(&st),
                    render::borel_table(&borel),
                    render::singular_table(&singular),
                    render::dims_table("forgetful image", &image),
                )
            })
        }
        Command::Fixed(source) => {
            let m = source.load()?.module;
            let dims = rho_localize(&m);
            let poly = fixed_poincare_polynomial(&m).map_err(|e| InputError::Usage(e.to_string()))?;
            let value = json!({ "betti": dims, "poincare": poly.to_string() });
            emit(source.format, &value, || {
                format!("P(t) = {poly}\n{}", render::dims_table("fixed-locus Betti numbers", &dims))
            })
        }
        Command::Borel(source) => {
            let b = tau_localize(&source.load()?.module);
            emit(source.format, &b, || render::borel_table(&b))
        }
        Command::Singular(source) => {
            let s = bredon::underlying_singular(&source.load()?.module);
            emit(source.format, &s, || render::singular_table(&s))
        }
        Command::Image(source) => {
            let image = forgetful_image_dims(&source.load()?.module);
            emit(source.format, &image, || render::dims_table("forgetful image", &image))
        }
        Command::Rankpoly(source) => {
            let r = source.load()?.module.rank_polynomial();
            emit(source.format, &r, || format!("{r}\n"))
        }
        Command::PdCheck { source, dim } => {
            let loaded = source.load()?;
            let n = dimension(dim, &loaded)?;
            let report = pd_symmetric(&loaded.module, n);
            let mut out = emit(source.format, &report, || render::pd_table(&report, n));
            out.passed = report.holds;
            out
        }
        Command::Validate { source, manifold } => {
            let loaded = source.load()?;
            let n = dimension(manifold.dim, &loaded)?;
            let meta = loaded.entry.as_ref().map(|e| &e.metadata);
            let fixed_point = manifold.fixed_point || meta.is_some_and(|m| m.has_fixed_point);
            let connected = manifold.connected || meta.is_some_and(|m| m.connected);
            let report = real_manifold_validate(&loaded.module, n, fixed_point, connected);
            let mut out = emit(source.format, &report, || render::manifold_table(&report));
            out.passed = report.passed();
            out
        }
        Command::Hodge { source, hodge, torsion_free } => {
            let loaded = source.load()?;
            let h: BivariatePolynomial = match hodge {
                Some(text) => text.parse().map_err(|e| InputError::Usage(format!("--hodge: {e}")))?,
                None => loaded
                    .entry
                    .as_ref()
                    .and_then(|e| e.metadata.hodge_polynomial.clone())
                    .ok_or_else(|| InputError::Usage("--hodge is required for this input".into()))?,
            };
            let expressive = hodge_expressive_check(&loaded.module, &h, torsion_free)
                .map_err(|e| InputError::Usage(format!("TORSION_UNKNOWN: {e}; pass --torsion-free true|false")))?;
            let birank = hodge_birank_check(&loaded.module, &h);
            let value = json!({ "hodge": h.to_string(), "expressive": expressive, "birank": birank });
            let mut out = emit(source.format, &value, || {
                format!("H(u,v) = {h}\nHodge-expressive: {expressive}\nbirank identity: {birank}\n")
            });
            out.passed = expressive;
            out
        }
        Command::Solve { constraints, format } => {
            let c = load_constraints(&constraints)?;
            let solutions = enumerate_decompositions(&c).map_err(|e| InputError::Usage(e.to_string()))?;
            let mut out = String::new();
            for m in &solutions {
                match format {
                    Format::Json => out.push_str(&m.to_canonical_json()),
                    Format::Table => out.push_str(&format!("{m}   [{}]", classify(m))),
                }
                out.push('\n');
            }
            Outcome::ok(out)
        }
        Command::Predict { constraints, format } => {
            let c = load_constraints(&constraints)?;
            let (k, t) = (krasnov_predict(&c), threefold_predict(&c));
            let value = json!({ "krasnov": k, "threefold": t });
            emit(format, &value, || {
                let line = |name: &str, p: bredon::solver::Prediction| match p.prediction {
                    Some(_) => format!("{name}: applicable, predicts GM\n"),
                    None => format!("{name}: not applicable\n"),
                };
                format!("{}{}", line("surface criterion", k), line("threefold criterion", t))
            })
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(outcome) => {
            let mut stdout = io::stdout().lock();
            let _ = stdout.write_all(outcome.text.as_bytes());
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
