use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dblcat::dblcat::{double_nerve, horizontal_nerve_level};
use dblcat::error::Error;
use dblcat::fixtures::{
    corrupted_parity, glued_vertical_pushout, parity_squares, pushout_spec, PARITY_CORRUPTIONS, PUSHOUT_SPEC_NAMES,
};
use dblcat::groth::{completeness_source, grothendieck_cat, grothendieck_dbl, spine_source, DblDiagram, Diagram};
use dblcat::homology::{betti, we_witness, NerveMap, Ring, WitnessVerdict};
use dblcat::json::{self as js, detect, validate_document, violations_to_json, Json, Kind};
use dblcat::pushout::{
    pushout_cat_sieve, pushout_dbl_box_sieve, verify_nerve_preserves_pushout, DblSievePushoutSpec, SievePushoutSpec,
};
use dblcat::sset::{beta, csd2_poset, diag, ex, nerve, poset_nerve, sd, sd_poset, Shape};
use dblcat::{DblFunctor, FinCat, FinDblCat, FinFunctor, FinPoset, SimplicialMap, TruncSSet};

#[derive(Parser)]
#[command(name = "dblcat", version, about = "Finite double categories, nerves, subdivisions and homology")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// truncation dimension for nerves, Ex and homology
    #[arg(long, global = true, default_value_t = 3)]
    max_dim: usize,
    #[arg(long, global = true, default_value = "q")]
    ring: Ring,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Args)]
struct Input {
    /// JSON input file; stdin when absent or `-`
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of any structure and report violations
    Validate(Input),
    /// Nerve of a category or poset
    Nerve(Input),
    /// Barycentric subdivision of a simplicial set
    Sd {
        #[command(flatten)]
        input: Input,
        /// emit the face poset instead of its nerve
        #[arg(long)]
        poset: bool,
    },
    /// Nerve of the poset cSd²(K) for a standard shape K
    Csd2 {
        #[arg(long, value_enum)]
        shape: ShapeArg,
        #[arg(long)]
        k: usize,
        /// missing face of a horn
        #[arg(long, default_value_t = 0)]
        t: usize,
        #[arg(long)]
        poset: bool,
    },
    /// One level of the horizontal nerve of a double category
    Hnerve {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1)]
        level: usize,
    },
    /// Cell counts of the double nerve
    Dnerve(Input),
    /// Diagonal of the double nerve
    Diag(Input),
    /// Kan's Ex of a simplicial set
    Ex {
        #[command(flatten)]
        input: Input,
        /// emit the comparison map X → Ex X instead
        #[arg(long)]
        beta: bool,
    },
    /// Pushout of a category along a sieve product
    PushoutCat(Input),
    /// Pushout of a double category along a sieve box product
    PushoutDbl(Input),
    /// Compare the horizontal nerve of a pushout with the pushout of nerves
    VerifyNerve(Input),
    /// Grothendieck construction of a diagram of (double) categories
    Groth {
        /// diagram file with shape, values and action
        file: Option<PathBuf>,
        /// shape category, for a constant or discrete diagram
        #[arg(long, conflicts_with = "file")]
        shape: Option<PathBuf>,
        /// one value for a constant diagram, or one per object of a discrete shape
        #[arg(long, num_args = 1.., requires = "shape")]
        values: Vec<PathBuf>,
    },
    /// Built-in examples
    Fixture {
        #[command(subcommand)]
        which: Fixture,
    },
    /// Homology of a simplicial set, or of the nerve of a category, poset or double category
    Homology(Input),
    /// Compare homology along a simplicial map, functor or double functor
    Witness(Input),
    /// Re-emit any structure in canonical JSON or DOT
    Export(Input),
}

#[derive(Subcommand)]
enum Fixture {
    /// Source of the spine comparison for [n]
    Spine {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        comparison: bool,
    },
    /// Source of the completeness comparison
    Completeness {
        #[arg(long)]
        comparison: bool,
    },
    /// Three objects with doubled squares, optionally with one corrupted entry
    Parity {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(PARITY_CORRUPTIONS))]
        corrupt: Option<String>,
    },
    /// A horizontal arrow with a vertical glued below its source
    GluedVertical,
    /// A named double sieve pushout spec
    Spec {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(PUSHOUT_SPEC_NAMES))]
        name: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    Simplex,
    Boundary,
    Horn,
}

enum Failure {
    /// bad input or a failed construction
    Domain(String),
    /// a check ran and said no; the report is still printed
    Rejected(Value),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = Result<Output, Failure>;

enum Output {
    Json(Value),
    Dot(String),
}

fn read_input(file: &Option<PathBuf>) -> Result<Value, Failure> {
    let (text, name) = match file {
        Some(p) if p.as_os_str() != "-" => {
            let text = fs::read_to_string(p).map_err(|e| Failure::Domain(format!("{}: {e}", p.display())))?;
            (text, p.display().to_string())
        }
        _ => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text).map_err(|e| Failure::Domain(format!("stdin: {e}")))?;
            (text, "stdin".to_string())
        }
    };
    js::parse(&text).map_err(|e| Failure::Domain(format!("{name}: {e}")))
}

fn kind_of(v: &Value) -> Result<Kind, Failure> {
    detect(v).ok_or_else(|| Failure::Domain("$: unrecognised document".into()))
}

fn expect<T: Json>(v: &Value, allowed: &[Kind]) -> Result<T, Failure> {
    let k = kind_of(v)?;
    if !allowed.contains(&k) {
        let want: Vec<&str> = allowed.iter().map(|k| k.name()).collect();
        return Err(Failure::Domain(format!("expected a {}, got a {}", want.join(" or "), k.name())));
    }
    Ok(T::from_json(v)?)
}

/// A category from a category or poset document.
fn category(v: &Value) -> Result<FinCat, Failure> {
    match kind_of(v)? {
        Kind::Poset => Ok(FinPoset::from_json(v)?.as_category()?),
        _ => expect(v, &[Kind::Category, Kind::Poset]),
    }
}

fn sset_output(x: &TruncSSet, format: Format) -> Output {
    match format {
        Format::Json => Output::Json(x.to_json()),
        Format::Dot => Output::Dot(js::sset_to_dot(x)),
    }
}

fn cat_output(c: &FinCat, format: Format) -> Output {
    match format {
        Format::Json => Output::Json(c.to_json()),
        Format::Dot => Output::Dot(js::cat_to_dot(c)),
    }
}

fn poset_output(p: &FinPoset, format: Format) -> Output {
    match format {
        Format::Json => Output::Json(p.to_json()),
        Format::Dot => Output::Dot(js::poset_to_dot(p)),
    }
}

fn dbl_output(a: &FinDblCat, format: Format) -> Output {
    match format {
        Format::Json => Output::Json(a.to_json()),
        Format::Dot => Output::Dot(js::dbl_to_dot(a)),
    }
}

fn json_only(v: Value, format: Format, what: &str) -> Outcome {
    match format {
        Format::Json => Ok(Output::Json(v)),
        Format::Dot => Err(Failure::Usage(format!("{what} has no DOT form"))),
    }
}

fn validate(v: &Value) -> Outcome {
    let (kind, vs) = validate_document(v)?;
    let report = json!({"kind": kind.name(), "valid": vs.is_empty(), "violations": violations_to_json(&vs)});
    if vs.is_empty() {
        Ok(Output::Json(report))
    } else {
        Err(Failure::Rejected(report))
    }
}

/// The simplicial set homology is taken of: the input itself, or the nerve
/// (the diagonal of the double nerve) of a category-like input.
fn homology_source(v: &Value, d: usize) -> Result<TruncSSet, Failure> {
    Ok(match kind_of(v)? {
        Kind::SimplicialSet => TruncSSet::from_json(v)?.truncate(d),
        Kind::DoubleCategory => diag(&double_nerve(&FinDblCat::from_json(v)?, d, d)?)?,
        _ => nerve(&category(v)?, d)?,
    })
}

fn witness(v: &Value, d: usize) -> Result<WitnessVerdict, Failure> {
    fn run(f: &impl NerveMap, d: usize) -> Result<WitnessVerdict, Failure> {
        Ok(we_witness(f, d)?)
    }
    match kind_of(v)? {
        Kind::SimplicialMap => run(&SimplicialMap::from_json(v)?, d),
        Kind::Functor => run(&FinFunctor::from_json(v)?, d),
        _ => run(&expect::<DblFunctor>(v, &[Kind::SimplicialMap, Kind::Functor, Kind::DoubleFunctor])?, d),
    }
}

fn export(v: &Value, format: Format) -> Outcome {
    match kind_of(v)? {
        Kind::Category => Ok(cat_output(&FinCat::from_json(v)?, format)),
        Kind::Poset => Ok(poset_output(&FinPoset::from_json(v)?, format)),
        Kind::SimplicialSet => Ok(sset_output(&TruncSSet::from_json(v)?, format)),
        Kind::DoubleCategory => Ok(dbl_output(&FinDblCat::from_json(v)?, format)),
        Kind::Functor => json_only(FinFunctor::from_json(v)?.to_json(), format, "a functor"),
        Kind::DoubleFunctor => json_only(DblFunctor::from_json(v)?.to_json(), format, "a double functor"),
        Kind::SimplicialMap => json_only(SimplicialMap::from_json(v)?.to_json(), format, "a simplicial map"),
        Kind::SievePushoutSpec => json_only(SievePushoutSpec::from_json(v)?.to_json(), format, "a pushout spec"),
        Kind::DblSievePushoutSpec => json_only(DblSievePushoutSpec::from_json(v)?.to_json(), format, "a pushout spec"),
        Kind::Diagram => json_only(Diagram::from_json(v)?.to_json(), format, "a diagram"),
        Kind::DblDiagram => json_only(DblDiagram::from_json(v)?.to_json(), format, "a diagram"),
    }
}

fn groth(file: &Option<PathBuf>, shape: &Option<PathBuf>, values: &[PathBuf], format: Format) -> Outcome {
    let Some(shape) = shape else {
        let v = read_input(file)?;
        return match kind_of(&v)? {
            Kind::Diagram => Ok(cat_output(&grothendieck_cat(&Diagram::from_json(&v)?)?.cat, format)),
            _ => Ok(dbl_output(
                &grothendieck_dbl(&expect::<DblDiagram>(&v, &[Kind::Diagram, Kind::DblDiagram])?)?.dbl,
                format,
            )),
        };
    };
    let j = Arc::new(category(&read_input(&Some(shape.clone()))?)?);
    let docs = values.iter().map(|p| read_input(&Some(p.clone()))).collect::<Result<Vec<_>, _>>()?;
    if docs.is_empty() {
        return Err(Failure::Usage("--shape needs --values".into()));
    }
    let constant = docs.len() == 1;
    if !constant && (docs.len() != j.object_count() || j.nonidentity_count() > 0) {
        return Err(Failure::Usage(
            "give one value for a constant diagram, or one per object of a discrete shape".into(),
        ));
    }
    let spread = |n: usize| if constant { vec![0; n] } else { (0..n).collect::<Vec<_>>() };
    let identities: Vec<usize> = (0..j.morphism_count()).collect();
    if kind_of(&docs[0])? == Kind::DoubleCategory {
        let vals = docs.iter().map(|d| Ok(Arc::new(FinDblCat::from_json(d)?))).collect::<Result<Vec<_>, Failure>>()?;
        let d = if constant {
            DblDiagram::constant(j, vals[0].clone())
        } else {
            let action = identities.iter().map(|&s| DblFunctor::identity(vals[j.src(s)].clone())).collect();
            DblDiagram::new(j.clone(), spread(j.object_count()).into_iter().map(|i| vals[i].clone()).collect(), action)?
        };
        Ok(dbl_output(&grothendieck_dbl(&d)?.dbl, format))
    } else {
        let vals = docs.iter().map(|d| Ok(Arc::new(category(d)?))).collect::<Result<Vec<_>, Failure>>()?;
        let d = if constant {
            Diagram::constant(j, vals[0].clone())
        } else {
            let action = identities.iter().map(|&s| FinFunctor::identity(vals[j.src(s)].clone())).collect();
            Diagram::new(j.clone(), spread(j.object_count()).into_iter().map(|i| vals[i].clone()).collect(), action)?
        };
        Ok(cat_output(&grothendieck_cat(&d)?.cat, format))
    }
}

fn fixture(which: &Fixture, format: Format) -> Outcome {
    match which {
        Fixture::Spine { n, comparison } => {
            let (a, f) = spine_source(*n)?;
            if *comparison {
                json_only(f.to_json(), format, "a comparison double functor")
            } else {
                Ok(dbl_output(&a, format))
            }
        }
        Fixture::Completeness { comparison } => {
            let (a, f) = completeness_source()?;
            if *comparison {
                json_only(f.to_json(), format, "a comparison double functor")
            } else {
                Ok(dbl_output(&a, format))
            }
        }
        Fixture::Parity { corrupt: None } => Ok(dbl_output(&parity_squares(), format)),
        Fixture::Parity { corrupt: Some(name) } => {
            let a = corrupted_parity(name).ok_or_else(|| Failure::Usage(format!("unknown corruption {name}")))?;
            Ok(dbl_output(&a, format))
        }
        Fixture::GluedVertical => json_only(glued_vertical_pushout().to_json(), format, "a pushout spec"),
        Fixture::Spec { name } => {
            let spec = pushout_spec(name)?.ok_or_else(|| Failure::Usage(format!("unknown spec {name}")))?;
            json_only(spec.to_json(), format, "a pushout spec")
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let (d, format) = (cli.max_dim, cli.format);
    match &cli.command {
        Command::Validate(i) => validate(&read_input(&i.file)?),
        Command::Nerve(i) => Ok(sset_output(&nerve(&category(&read_input(&i.file)?)?, d)?, format)),
        Command::Sd { input, poset } => {
            let x: TruncSSet = expect(&read_input(&input.file)?, &[Kind::SimplicialSet])?;
            if *poset {
                Ok(poset_output(&sd_poset(&x)?, format))
            } else {
                Ok(sset_output(&sd(&x)?, format))
            }
        }
        Command::Csd2 { shape, k, t, poset } => {
            let shape = match shape {
                ShapeArg::Simplex => Shape::Simplex,
                ShapeArg::Boundary => Shape::Boundary,
                ShapeArg::Horn => Shape::Horn(*t),
            };
            let p = csd2_poset(shape, *k)?;
            if *poset {
                Ok(poset_output(&p, format))
            } else {
                Ok(sset_output(&poset_nerve(&p, d)?, format))
            }
        }
        Command::Hnerve { input, level } => {
            let a: FinDblCat = expect(&read_input(&input.file)?, &[Kind::DoubleCategory])?;
            Ok(cat_output(&horizontal_nerve_level(&a, *level)?, format))
        }
        Command::Dnerve(i) => {
            let a: FinDblCat = expect(&read_input(&i.file)?, &[Kind::DoubleCategory])?;
            let b = double_nerve(&a, d, d)?;
            let counts: Vec<Vec<usize>> = (0..=d).map(|n| (0..=d).map(|k| b.count(n, k)).collect()).collect();
            json_only(json!({"n_max": d, "k_max": d, "counts": counts}), format, "a double nerve")
        }
        Command::Diag(i) => {
            let a: FinDblCat = expect(&read_input(&i.file)?, &[Kind::DoubleCategory])?;
            Ok(sset_output(&diag(&double_nerve(&a, d, d)?)?, format))
        }
        Command::Ex { input, beta: as_map } => {
            let x: TruncSSet = expect(&read_input(&input.file)?, &[Kind::SimplicialSet])?;
            if *as_map {
                json_only(beta(&x, d)?.to_json(), format, "a simplicial map")
            } else {
                Ok(sset_output(&ex(&x, d)?, format))
            }
        }
        Command::PushoutCat(i) => {
            let spec: SievePushoutSpec = expect(&read_input(&i.file)?, &[Kind::SievePushoutSpec])?;
            Ok(cat_output(&pushout_cat_sieve(&spec)?.cat, format))
        }
        Command::PushoutDbl(i) => {
            let spec: DblSievePushoutSpec = expect(&read_input(&i.file)?, &[Kind::DblSievePushoutSpec])?;
            Ok(dbl_output(&pushout_dbl_box_sieve(&spec)?.dbl, format))
        }
        Command::VerifyNerve(i) => {
            let spec: DblSievePushoutSpec = expect(&read_input(&i.file)?, &[Kind::DblSievePushoutSpec])?;
            let verdicts = verify_nerve_preserves_pushout(&spec, d)?;
            let rows: Vec<Value> = verdicts
                .iter()
                .map(|l| {
                    json!({
                        "level": l.level,
                        "nerve": [l.nerve_counts.0, l.nerve_counts.1],
                        "pushout": [l.pushout_counts.0, l.pushout_counts.1],
                        "isomorphic": l.isomorphic,
                        "detail": l.detail,
                    })
                })
                .collect();
            let all = verdicts.iter().all(|l| l.isomorphic);
            let report = json!({"isomorphic": all, "levels": rows});
            if format == Format::Dot {
                return Err(Failure::Usage("a verdict table has no DOT form".into()));
            }
            if all {
                Ok(Output::Json(report))
            } else {
                Err(Failure::Rejected(report))
            }
        }
        Command::Groth { file, shape, values } => groth(file, shape, values, format),
        Command::Fixture { which } => fixture(which, format),
        Command::Homology(i) => {
            let x = homology_source(&read_input(&i.file)?, d)?;
            json_only(betti(&x, cli.ring).to_json(), format, "a homology report")
        }
        Command::Witness(i) => {
            if format == Format::Dot {
                return Err(Failure::Usage("a witness verdict has no DOT form".into()));
            }
            let v = witness(&read_input(&i.file)?, d)?;
            if v.passes() {
                Ok(Output::Json(v.to_json()))
            } else {
                Err(Failure::Rejected(v.to_json()))
            }
        }
        Command::Export(i) => export(&read_input(&i.file)?, format),
    }
}

fn emit(out: &Output) {
    let text = match out {
        Output::Json(v) => js::to_text(v),
        Output::Dot(s) => s.clone(),
    };
    let mut stdout = io::stdout().lock();
    // a closed pipe downstream is not our failure
    let _ = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Err(Failure::Rejected(report)) => {
            emit(&Output::Json(report));
            ExitCode::from(1)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
