use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use coxeter_sortable::alignment::orient_pair;
use coxeter_sortable::clusters::{cl_map, enumerate_clusters, AlmostReflection};
use coxeter_sortable::enumeration::{catalan_formula, count_report, degrees, positive_catalan_formula};
use coxeter_sortable::group_spec::GroupSpec;
use coxeter_sortable::noncrossing::{absolute_length, canonical_generators, nc_interval, NcTable};
use coxeter_sortable::sorting::{enumerate_sortables, is_sortable, sorting_word};
use coxeter_sortable::verify::{verify_all, VerifyMode, VerifyOptions};
use coxeter_sortable::{CoxeterElement, CoxeterSystem, Element, Error};

#[derive(Parser)]
#[command(name = "coxsort", version, about = "Coxeter-sortable elements, noncrossing partitions and clusters")]
struct Cli {
    /// Group: a JSON spec, a file holding one, or a name such as B4 or I2(5).
    #[arg(long, global = true)]
    group: Option<String>,
    /// Coxeter element as comma-separated generator indices (default 0,1,...,n-1).
    #[arg(long, global = true, value_delimiter = ',')]
    coxeter: Option<Vec<usize>>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Catalan, Narayana and positive counts, each computed several ways.
    Count,
    /// Coxeter numbers and exponents.
    Degrees,
    #[command(subcommand)]
    Sortable(SortableCmd),
    #[command(subcommand)]
    Nc(NcCmd),
    #[command(subcommand)]
    Cluster(ClusterCmd),
    /// Orientation of the rank-two parabolic generated by two reflections,
    /// each given as a word.
    Orient { t1: String, t2: String },
    /// Run the cross-check battery; exits with 3 if any check fails.
    Verify {
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
}

#[derive(Subcommand)]
enum SortableCmd {
    List,
    Check { word: String },
}

#[derive(Subcommand)]
enum NcCmd {
    /// Image of one sortable element, or of all of them.
    Map {
        word: Option<String>,
    },
    Inverse {
        word: String,
    },
    Interval,
}

#[derive(Subcommand)]
enum ClusterCmd {
    List,
    /// Cluster of one sortable element, or of all of them.
    Map {
        word: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Auto,
    Exhaustive,
    Sampled,
}

enum Failure {
    Usage(String),
    Compute(Error),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidSpec(_) | Error::InvalidGenerator { .. } | Error::NotCoxeterWord(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Compute(other),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Ctx {
    sys: CoxeterSystem,
    c: CoxeterElement,
    format: Format,
}

impl Ctx {
    fn word(&self, w: &Element) -> String {
        self.sys.reduced_word(w).to_string()
    }

    fn reflection(&self, t: usize) -> String {
        AlmostReflection::Reflection(t).display(&self.sys)
    }

    fn element(&self, text: &str) -> Result<Element, Failure> {
        let text = text.trim();
        if text.is_empty() || text == "e" {
            return Ok(Element::identity(&self.sys));
        }
        let letters = text
            .split(',')
            .map(|s| s.trim().parse::<usize>().map_err(|_| Failure::Usage(format!("bad word {text:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.sys.element_from_word(&letters)?)
    }

    fn reflection_of(&self, text: &str) -> Result<usize, Failure> {
        let w = self.element(text)?;
        (0..self.sys.num_reflections())
            .find(|&t| self.sys.reflection(t) == &w)
            .ok_or_else(|| Failure::Usage(format!("{text:?} is not a reflection")))
    }

    /// Writes `rows` as a JSON array or as CSV with a header.
    fn rows<T: Serialize>(&self, rows: &[T]) -> Result<(), Failure> {
        let mut out = io::stdout().lock();
        match self.format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut out, rows)?;
                writeln!(out)?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                for r in rows {
                    w.serialize(r)?;
                }
                w.flush()?;
            }
        }
        Ok(())
    }

    /// JSON for a nested object; CSV falls back to the given flat rows.
    fn nested<T: Serialize, R: Serialize>(&self, value: &T, flat: &[R]) -> Result<(), Failure> {
        match self.format {
            Format::Json => {
                let mut out = io::stdout().lock();
                serde_json::to_writer_pretty(&mut out, value)?;
                writeln!(out)?;
                Ok(())
            }
            Format::Csv => self.rows(flat),
        }
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")
}

#[derive(Serialize)]
struct Pair {
    quantity: String,
    value: String,
}

#[derive(Serialize)]
struct DegreeRow {
    generators: String,
    coxeter_number: usize,
    exponents: String,
}

#[derive(Serialize)]
struct SortableRow {
    element: String,
    sorting_word: String,
    descents: usize,
    full_support: bool,
}

#[derive(Serialize)]
struct CheckRow {
    element: String,
    sortable: bool,
    sorting_word: String,
}

#[derive(Serialize)]
struct NcRow {
    sortable: String,
    noncrossing: String,
    rank: usize,
    t_word: String,
}

#[derive(Serialize)]
struct IntervalRow {
    element: String,
    rank: usize,
    canonical_generators: String,
}

#[derive(Serialize)]
struct ClusterRow {
    cluster: String,
    positive: bool,
}

#[derive(Serialize)]
struct ClusterMapRow {
    sortable: String,
    cluster: String,
}

#[derive(Serialize)]
struct OrientRow {
    source: String,
    target: String,
}

#[derive(Serialize)]
struct VerifyRow {
    name: String,
    status: String,
    checked: usize,
    failures: usize,
    witness: String,
}

fn run(cli: Cli) -> Result<(), Failure> {
    let group = cli.group.as_deref().ok_or_else(|| Failure::Usage("--group is required".into()))?;
    let mut spec = GroupSpec::parse(group)?;
    if let Some(w) = cli.coxeter {
        spec.coxeter_word = Some(w);
    }
    let sys = spec.system()?;
    let c = spec.coxeter_element(&sys)?;
    let ctx = Ctx { sys, c, format: cli.format };
    let (sys, c) = (&ctx.sys, &ctx.c);

    match cli.command {
        Command::Count => {
            let r = count_report(sys, c)?;
            let flat = [
                ("catalan", r.catalan.to_string()),
                ("sortable_count", r.sortable_count.to_string()),
                ("nc_count", r.nc_count.to_string()),
                ("cluster_count", r.cluster_count.to_string()),
                ("positive_catalan", r.positive_catalan.to_string()),
                ("positive_full_support", r.positive_full_support.to_string()),
                ("positive_clusters", r.positive_clusters.to_string()),
                ("positive_inclusion_exclusion", r.positive_inclusion_exclusion.to_string()),
                ("narayana_descents", join(&r.narayana_descents)),
                ("narayana_ranks", join(&r.narayana_ranks)),
                ("all_match", r.all_match.to_string()),
            ]
            .map(|(q, v)| Pair { quantity: q.into(), value: v });
            ctx.nested(&r, &flat)?;
        }
        Command::Degrees => {
            let d = degrees(sys)?;
            let rows: Vec<DegreeRow> = d
                .iter()
                .map(|x| DegreeRow {
                    generators: join(&x.generators),
                    coxeter_number: x.h,
                    exponents: join(&x.exponents),
                })
                .collect();
            #[derive(Serialize)]
            struct Out<'a> {
                components: &'a [DegreeRow],
                catalan: u128,
                positive_catalan: u128,
            }
            let out = Out {
                components: &rows,
                catalan: catalan_formula(&d)?,
                positive_catalan: positive_catalan_formula(&d)?,
            };
            ctx.nested(&out, &rows)?;
        }
        Command::Sortable(SortableCmd::List) => {
            let rows: Vec<SortableRow> = enumerate_sortables(sys, c)
                .map(|n| SortableRow {
                    element: ctx.word(&n.element),
                    sorting_word: n.word.display(),
                    descents: sys.descents(&n.element).len(),
                    full_support: sys.support(&n.element) == sys.full_mask(),
                })
                .collect();
            ctx.rows(&rows)?;
        }
        Command::Sortable(SortableCmd::Check { word }) => {
            let w = ctx.element(&word)?;
            let row = CheckRow {
                element: ctx.word(&w),
                sortable: is_sortable(sys, &w, c),
                sorting_word: sorting_word(sys, &w, c)?.display(),
            };
            ctx.nested(&row, &[&row])?;
        }
        Command::Nc(cmd) => {
            let table = NcTable::new(sys, c)?;
            let row = |i: usize| NcRow {
                sortable: ctx.word(&table.sortables[i]),
                noncrossing: ctx.word(&table.images[i]),
                rank: absolute_length(sys, &table.images[i]),
                t_word: table.factors[i].iter().map(|&t| ctx.reflection(t)).collect::<Vec<_>>().join("."),
            };
            match cmd {
                NcCmd::Map { word: None } => ctx.rows(&(0..table.len()).map(row).collect::<Vec<_>>())?,
                NcCmd::Map { word: Some(word) } => {
                    let w = ctx.element(&word)?;
                    let i = table.sortables.iter().position(|s| s == &w).ok_or(Error::NotSortable)?;
                    let r = row(i);
                    ctx.nested(&r, &[&r])?;
                }
                NcCmd::Inverse { word } => {
                    let x = ctx.element(&word)?;
                    table.inverse(sys, &x, c)?;
                    let r = row(table.index_of(&x).ok_or(Error::NotNoncrossing)?);
                    ctx.nested(&r, &[&r])?;
                }
                NcCmd::Interval => {
                    let rows: Vec<IntervalRow> = nc_interval(sys, c)
                        .iter()
                        .map(|p| IntervalRow {
                            element: ctx.word(&p.element),
                            rank: p.rank,
                            canonical_generators: canonical_generators(sys, &p.element)
                                .iter()
                                .map(|&t| ctx.reflection(t))
                                .collect::<Vec<_>>()
                                .join(";"),
                        })
                        .collect();
                    ctx.rows(&rows)?;
                }
            }
        }
        Command::Cluster(ClusterCmd::List) => {
            let rows: Vec<ClusterRow> = enumerate_clusters(sys, c)?
                .iter()
                .map(|cl| ClusterRow { cluster: cl.display(sys), positive: cl.is_positive() })
                .collect();
            ctx.rows(&rows)?;
        }
        Command::Cluster(ClusterCmd::Map { word }) => {
            let targets: Vec<Element> = match word {
                Some(wd) => vec![ctx.element(&wd)?],
                None => enumerate_sortables(sys, c).map(|n| n.element).collect(),
            };
            let rows = targets
                .iter()
                .map(|w| Ok(ClusterMapRow { sortable: ctx.word(w), cluster: cl_map(sys, w, c)?.display(sys) }))
                .collect::<Result<Vec<_>, Error>>()?;
            ctx.rows(&rows)?;
        }
        Command::Orient { t1, t2 } => {
            let (a, b) = (ctx.reflection_of(&t1)?, ctx.reflection_of(&t2)?);
            let e = orient_pair(sys, c, a, b)?;
            let row = OrientRow { source: ctx.reflection(e.source), target: ctx.reflection(e.target) };
            ctx.nested(&row, &[&row])?;
        }
        Command::Verify { mode, samples } => {
            let mode = match mode {
                Mode::Auto => VerifyMode::Auto,
                Mode::Exhaustive => VerifyMode::Exhaustive,
                Mode::Sampled => VerifyMode::Sampled,
            };
            let report = verify_all(sys, c, &VerifyOptions { mode, seed: cli.seed, samples })?;
            let flat: Vec<VerifyRow> = report
                .checks
                .iter()
                .map(|r| VerifyRow {
                    name: r.name.clone(),
                    status: serde_json::to_value(r.status)
                        .ok()
                        .and_then(|v| v.as_str().map(String::from))
                        .unwrap_or_default(),
                    checked: r.checked,
                    failures: r.failures,
                    witness: r.witness.clone().unwrap_or_default(),
                })
                .collect();
            ctx.nested(&report, &flat)?;
            if !report.passed() {
                return Err(Failure::Verification(format!("{} checks failed", report.failures())));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(3)
        }
    }
}
