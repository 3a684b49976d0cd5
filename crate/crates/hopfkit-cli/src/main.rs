//! hopfkit: exact computations with finite dimensional Hopf algebras given
//! by structure constants.
//!
//! Exit codes: 0 = verified / success, 1 = a mathematical verdict is false,
//! 2 = input or usage error.

mod reports;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hopfkit_core::constructions::{
    abelian_ext_lower_series, abelian_extension, drinfeld_double, dual_group_algebra,
    group_algebra,
};
use hopfkit_core::error::Error;
use hopfkit_core::formats;
use hopfkit_core::groups::{
    chief_series_group, composition_series_group, maximal_subgroup_chains, FiniteGroup,
};
use hopfkit_core::hopf::Hopf;
use hopfkit_core::iso::{butterfly, first_isomorphism, second_isomorphism, third_isomorphism};
use hopfkit_core::scalar::Field;
use hopfkit_core::series::{
    composition_series, is_lower_composition_series, lower_length, provider_for, schreier_refine,
    upper_length, verify_subnormal, LatticeProvider,
};
use hopfkit_core::subobjects::{quotient_by, HopfSubalgebra};

use reports::*;

#[derive(Parser)]
#[command(name = "hopfkit", version, about = "Exact engine for finite dimensional Hopf algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Args)]
struct OutputOpts {
    /// Report format
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    report: ReportFormat,
    /// Write the report to a file instead of stdout
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct AlgebraInput {
    /// Input .hopf.json file
    file: Option<PathBuf>,
    /// Build the algebra in-process instead of reading a file
    #[arg(long)]
    construction: Option<String>,
    /// Group for the construction: a name (C6, S4, A5, D8, V4, ...) or a
    /// .group.json path
    #[arg(long)]
    group: Option<String>,
    /// Matched pair file for abelian extensions
    #[arg(long = "matched-pair")]
    matched_pair: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Verify all Hopf algebra axioms of the input
    Verify {
        #[command(flatten)]
        input: AlgebraInput,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Build a named construction and emit its .hopf.json
    Build {
        /// group-algebra | dual-group-algebra | drinfeld-double | abelian-extension
        construction: String,
        #[arg(long)]
        group: Option<String>,
        #[arg(long = "matched-pair")]
        matched_pair: Option<PathBuf>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Composition factors and length
    Factors {
        #[command(flatten)]
        input: AlgebraInput,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Composition, lower and upper lengths
    Lengths {
        #[command(flatten)]
        input: AlgebraInput,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Verify a subnormal series file against the input algebra
    #[command(name = "series-verify")]
    SeriesVerify {
        #[arg(long)]
        series: PathBuf,
        #[command(flatten)]
        input: AlgebraInput,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Schreier refinement of two lower series
    Refine {
        #[arg(long = "series-a")]
        series_a: PathBuf,
        #[arg(long = "series-b")]
        series_b: PathBuf,
        #[command(flatten)]
        input: AlgebraInput,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Butterfly lemma on four subalgebras (A, A', B, B')
    Butterfly {
        #[arg(long = "sub")]
        subs: Vec<PathBuf>,
        #[command(flatten)]
        input: AlgebraInput,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Isomorphism theorems (first | second | third)
    Iso {
        which: String,
        #[arg(long = "sub")]
        subs: Vec<PathBuf>,
        #[command(flatten)]
        input: AlgebraInput,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Group oracle queries (composition | chief | maximal-chains)
    Group {
        which: String,
        #[arg(long)]
        group: String,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Emit the bundled sample input files
    Fixtures {
        /// Target directory (default: current directory)
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("hopfkit: {e}");
            ExitCode::from(2)
        }
    }
}

fn read_to_string(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_group(spec: &str) -> Result<FiniteGroup, Error> {
    if spec.ends_with(".json") {
        formats::parse_group_json(&read_to_string(Path::new(spec))?)
    } else {
        FiniteGroup::named(spec)
    }
}

fn load_algebra(input: &AlgebraInput) -> Result<(Hopf, LatticeProvider), Error> {
    if let Some(path) = &input.file {
        let h = formats::parse_hopf_json(&read_to_string(path)?)?;
        let p = provider_for(&h);
        return Ok((h, p));
    }
    let Some(kind) = &input.construction else {
        return Err(Error::Input(
            "provide an input file or --construction with --group/--matched-pair".into(),
        ));
    };
    build_construction(kind, input.group.as_deref(), input.matched_pair.as_deref())
}

fn build_construction(
    kind: &str,
    group: Option<&str>,
    matched_pair: Option<&Path>,
) -> Result<(Hopf, LatticeProvider), Error> {
    let field = Field::Q;
    match kind {
        "group-algebra" => {
            let g = load_group(group.ok_or_else(|| Error::Input("--group required".into()))?)?;
            let h = group_algebra(&g, field);
            let p = provider_for(&h);
            Ok((h, p))
        }
        "dual-group-algebra" => {
            let g = load_group(group.ok_or_else(|| Error::Input("--group required".into()))?)?;
            let h = dual_group_algebra(&g, field);
            let p = provider_for(&h);
            Ok((h, p))
        }
        "drinfeld-double" => {
            let g = load_group(group.ok_or_else(|| Error::Input("--group required".into()))?)?;
            let ext = drinfeld_double(&g, field)?;
            let p = provider_for(&ext.hopf);
            Ok((ext.hopf, p))
        }
        "abelian-extension" => {
            let path = matched_pair
                .ok_or_else(|| Error::Input("--matched-pair required".into()))?;
            let mp = formats::parse_mp_json(&read_to_string(path)?, field)?;
            let ext = abelian_extension(&mp, field)?;
            let p = provider_for(&ext.hopf);
            Ok((ext.hopf, p))
        }
        other => Err(Error::Input(format!("unknown construction {other:?}"))),
    }
}

fn emit(out: &OutputOpts, json: String, text: String) -> Result<(), Error> {
    let payload = match out.report {
        ReportFormat::Json => json,
        ReportFormat::Text => text,
    };
    match &out.output {
        Some(path) => fs::write(path, payload)
            .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

fn load_sub(h: &Hopf, path: &Path) -> Result<hopfkit_core::subspace::Subspace, Error> {
    let spec: formats::SubFile = serde_json::from_str(&read_to_string(path)?)
        .map_err(|e| Error::Input(format!("bad .sub.json {}: {e}", path.display())))?;
    formats::resolve_sub(h, &spec)
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Verify { input, out } => {
            let started = Instant::now();
            let (h, _) = load_algebra(&input)?;
            let report = h.verify_axioms();
            let ok = report.pass();
            let r = VerifyReport::from_axioms(h.dim(), &report);
            emit(&out, formats::emit_json(&r), r.text(started.elapsed()))?;
            Ok(ok)
        }
        Command::Build {
            construction,
            group,
            matched_pair,
            out,
        } => {
            let started = Instant::now();
            let (h, _) =
                build_construction(&construction, group.as_deref(), matched_pair.as_deref())?;
            let file_text = formats::emit_hopf_json(&h);
            match &out.output {
                Some(path) => fs::write(path, &file_text)
                    .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))?,
                None => print!("{file_text}"),
            }
            if out.report == ReportFormat::Text {
                eprintln!(
                    "built {} (dim {}) in {:?}",
                    construction,
                    h.dim(),
                    started.elapsed()
                );
            }
            Ok(true)
        }
        Command::Factors { input, out } => {
            let started = Instant::now();
            let (h, p) = load_algebra(&input)?;
            let series = composition_series(&h, &p)?;
            let r = FactorsReport::from_series(&series);
            emit(&out, formats::emit_json(&r), r.text(started.elapsed()))?;
            Ok(true)
        }
        Command::Lengths { input, out } => {
            let started = Instant::now();
            let (h, p) = load_algebra(&input)?;
            let r = LengthsReport {
                length: hopfkit_core::series::length(&h, &p)?,
                lower: lower_length(&h, &p)?,
                upper: upper_length(&h, &p)?,
            };
            emit(&out, formats::emit_json(&r), r.text(started.elapsed()))?;
            Ok(true)
        }
        Command::SeriesVerify { series, input, out } => {
            let started = Instant::now();
            let (h, p) = load_algebra(&input)?;
            let sf: formats::SeriesFile = serde_json::from_str(&read_to_string(&series)?)
                .map_err(|e| Error::Input(format!("bad .series.json: {e}")))?;
            let s = formats::resolve_series(&h, &sf)?;
            let rep = verify_subnormal(&s, &p)?;
            let lower_comp = if rep.valid {
                Some(is_lower_composition_series(&s, &p)?)
            } else {
                None
            };
            let ok = rep.valid;
            let r = SeriesVerifyReport::new(&rep, lower_comp);
            emit(&out, formats::emit_json(&r), r.text(started.elapsed()))?;
            Ok(ok)
        }
        Command::Refine {
            series_a,
            series_b,
            input,
            out,
        } => {
            let started = Instant::now();
            let (h, p) = load_algebra(&input)?;
            let fa: formats::SeriesFile = serde_json::from_str(&read_to_string(&series_a)?)
                .map_err(|e| Error::Input(format!("bad .series.json: {e}")))?;
            let fb: formats::SeriesFile = serde_json::from_str(&read_to_string(&series_b)?)
                .map_err(|e| Error::Input(format!("bad .series.json: {e}")))?;
            let sa = formats::resolve_series(&h, &fa)?;
            let sb = formats::resolve_series(&h, &fb)?;
            let rep = schreier_refine(&sa, &sb, &p)?;
            let ok = rep.equivalent;
            let r = RefineReport::new(&rep);
            emit(&out, formats::emit_json(&r), r.text(started.elapsed()))?;
            Ok(ok)
        }
        Command::Butterfly { subs, input, out } => {
            let started = Instant::now();
            if subs.len() != 4 {
                return Err(Error::Input(
                    "butterfly needs exactly four --sub files: A A' B B'".into(),
                ));
            }
            let (h, _) = load_algebra(&input)?;
            let spaces: Vec<_> = subs
                .iter()
                .map(|s| load_sub(&h, s))
                .collect::<Result<_, _>>()?;
            let rep = butterfly(&h, &spaces[0], &spaces[1], &spaces[2], &spaces[3])?;
            let ok = rep.pass();
            let r = ButterflyJson::new(&rep);
            emit(&out, formats::emit_json(&r), r.text(started.elapsed()))?;
            Ok(ok)
        }
        Command::Iso {
            which,
            subs,
            input,
            out,
        } => {
            let started = Instant::now();
            let (h, _) = load_algebra(&input)?;
            let r = match which.as_str() {
                "first" => {
                    // pi is the canonical projection along the named subalgebra
                    let [k] = subs.as_slice() else {
                        return Err(Error::Input("iso first needs one --sub".into()));
                    };
                    let kspace = load_sub(&h, k)?;
                    let quo = quotient_by(&h, &kspace)?;
                    let cert = first_isomorphism(&quo.projection)?;
                    IsoJson::certificate("first-isomorphism", &cert)
                }
                "second" => {
                    let [a, b] = subs.as_slice() else {
                        return Err(Error::Input("iso second needs two --sub (A, B)".into()));
                    };
                    let a = HopfSubalgebra::new(h.clone(), load_sub(&h, a)?)?;
                    let b = HopfSubalgebra::new(h.clone(), load_sub(&h, b)?)?;
                    let outp = second_isomorphism(&a, &b)?;
                    IsoJson::certificate("second-isomorphism", &outp.certificate)
                }
                "third" => {
                    let [a, b] = subs.as_slice() else {
                        return Err(Error::Input("iso third needs two --sub (A, B)".into()));
                    };
                    let a = load_sub(&h, a)?;
                    let b = load_sub(&h, b)?;
                    let outp = third_isomorphism(&h, &a, &b)?;
                    IsoJson::third(&outp)
                }
                other => {
                    return Err(Error::Input(format!(
                        "unknown isomorphism theorem {other:?}; use first|second|third"
                    )))
                }
            };
            let ok = r.verified;
            emit(&out, formats::emit_json(&r), r.text(started.elapsed()))?;
            Ok(ok)
        }
        Command::Group { which, group, out } => {
            let started = Instant::now();
            let g = load_group(&group)?;
            let r = match which.as_str() {
                "composition" => GroupReport::from_series(&g, composition_series_group(&g)),
                "chief" => GroupReport::from_series(&g, chief_series_group(&g)),
                "maximal-chains" => {
                    let (chains, lengths) = maximal_subgroup_chains(&g);
                    GroupReport::from_chains(&g, chains, lengths)
                }
                other => {
                    return Err(Error::Input(format!(
                        "unknown group query {other:?}; use composition|chief|maximal-chains"
                    )))
                }
            };
            emit(&out, formats::emit_json(&r), r.text(started.elapsed()))?;
            Ok(true)
        }
        Command::Fixtures { output } => {
            let dir = output.unwrap_or_else(|| PathBuf::from("."));
            fs::create_dir_all(&dir)
                .map_err(|e| Error::Input(format!("cannot create {}: {e}", dir.display())))?;
            let written = write_fixtures(&dir)?;
            for w in &written {
                println!("{w}");
            }
            Ok(true)
        }
    }
}

fn write_fixtures(dir: &Path) -> Result<Vec<String>, Error> {
    let mut written = Vec::new();
    let mut put = |name: &str, text: String| -> Result<(), Error> {
        let path = dir.join(name);
        fs::write(&path, text)
            .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))?;
        written.push(path.display().to_string());
        Ok(())
    };
    // the simple, non-semisimple four-dimensional sample
    let sw = hopfkit_core::fixtures::sweedler(Field::Q);
    put("sweedler.hopf.json", formats::emit_hopf_json(&sw))?;
    // the alternating group on five points, for the maximal-chain demo
    put(
        "a5.group.json",
        formats::emit_json(&formats::GroupSpecFile::Named {
            name: "A5".to_string(),
        }),
    )?;
    // split extension from the order-6 factorization
    let bis = hopfkit_core::constructions::bismash_s3_pair();
    put(
        "s3_bismash.mp.json",
        formats::emit_json(&formats::matched_pair_to_file(&bis)),
    )?;
    // two lower series of the S4 group algebra, refinable to equivalence
    let series_v4 = formats::SeriesFile {
        direction: "lower".into(),
        chain: vec![
            formats::SubFile::Subgroup {
                subgroup: vec!["(1 2)".into(), "(1 2 3 4)".into()],
            },
            formats::SubFile::Subgroup {
                subgroup: vec!["(1 2)(3 4)".into(), "(1 3)(2 4)".into()],
            },
            formats::SubFile::Subgroup { subgroup: vec![] },
        ],
    };
    put("ks4_v4.series.json", formats::emit_json(&series_v4))?;
    let series_a4 = formats::SeriesFile {
        direction: "lower".into(),
        chain: vec![
            formats::SubFile::Subgroup {
                subgroup: vec!["(1 2)".into(), "(1 2 3 4)".into()],
            },
            formats::SubFile::Subgroup {
                subgroup: vec!["(1 2 3)".into(), "(1 2)(3 4)".into()],
            },
            formats::SubFile::Subgroup { subgroup: vec![] },
        ],
    };
    put("ks4_a4.series.json", formats::emit_json(&series_a4))?;
    // canonical lower series of the double of S3, as vectors
    let d = drinfeld_double(&FiniteGroup::named("S3").expect("S3"), Field::Q)?;
    let series = abelian_ext_lower_series(&d)?;
    let chain = series
        .chain
        .iter()
        .map(|s| formats::SubFile::Vectors {
            vectors: s
                .basis()
                .iter()
                .map(|r| r.iter().map(|c| c.canonical_string()).collect())
                .collect(),
        })
        .collect();
    put(
        "ds3_canonical.series.json",
        formats::emit_json(&formats::SeriesFile {
            direction: "lower".into(),
            chain,
        }),
    )?;
    Ok(written)
}
