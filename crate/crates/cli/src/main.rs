use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use degseq_core::bench;
use degseq_core::format;
use degseq_core::generate;
use degseq_core::graph::{bipartition, jdm_of_graph, neighbor_degree_sum, second_order_profile};
use degseq_core::graphicality::{erdos_gallai, havel_hakimi, jdm_graphical};
use degseq_core::reductions;
use degseq_core::solvers::{self, RowEquation, SearchBudget, SolveReport, Verdict};

const YES: u8 = 0;
const NO: u8 = 1;
const UNKNOWN: u8 = 2;
const USAGE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "degseq-lab",
    version,
    about = "Degree-sequence realization, graphicality checks and gadget reductions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a profile of a graph.
    Compute { what: ComputeWhat, graph: PathBuf },
    /// Test a degree sequence or a joint degree matrix for graphicality.
    Check { test: CheckTest, input: PathBuf },
    /// Translate an instance into another problem.
    Reduce {
        reduction: Reduction,
        input: PathBuf,
        output: PathBuf,
        /// Rescale a Basket Filling instance first when its gadget would be ambiguous.
        #[arg(long)]
        auto_rescale: bool,
    },
    /// Solve an instance and print a certificate.
    Solve {
        problem: Problem,
        input: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Check a certificate against an instance.
    Verify { problem: VerifyProblem, instance: PathBuf, certificate: PathBuf },
    /// Read a source solution back out of a gadget realization.
    Decode { gadget: Gadget, graph: PathBuf, source: PathBuf },
    /// Generate a seeded instance.
    Gen {
        #[command(subcommand)]
        what: GenWhat,
    },
    /// Solve every instance in a directory and print CSV.
    Bench {
        dir: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Args)]
struct BudgetArgs {
    /// Search node limit; 0 means unlimited.
    #[arg(long, default_value_t = 0)]
    max_nodes: u64,
    /// Wall-clock limit in milliseconds; 0 means unlimited.
    #[arg(long, default_value_t = 0)]
    max_millis: u64,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        SearchBudget::new(self.max_nodes, self.max_millis)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ComputeWhat {
    Sods,
    Xy,
    Jdm,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckTest {
    Hh,
    Eg,
    Jdm,
}

#[derive(Clone, Copy, ValueEnum)]
enum Reduction {
    #[value(name = "3p-bf")]
    TpBf,
    BfSods,
    #[value(name = "3p-bisods")]
    TpBisods,
    #[value(name = "3p-xy")]
    TpXy,
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    #[value(name = "3p")]
    Tp,
    Bf,
    Sods,
    Bisods,
    Xy,
    Jdmfeas,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyProblem {
    #[value(name = "3p")]
    Tp,
    Bf,
    Sods,
    Bisods,
    Xy,
    Jdm,
}

#[derive(Clone, Copy, ValueEnum)]
enum Gadget {
    Sods,
    Bisods,
    Xy,
}

#[derive(Subcommand)]
enum GenWhat {
    /// A solvable 3-Partition instance.
    #[command(name = "3p")]
    Tp {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        m: usize,
        #[arg(long = "W")]
        w: usize,
    },
    /// An Erdős–Rényi random graph.
    Graph {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
    },
}

/// Failure that maps to the usage exit code.
#[derive(Debug)]
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn print(out: &mut impl Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn yes_no(ok: bool) -> u8 {
    if ok {
        YES
    } else {
        NO
    }
}

/// Prints the certificate or the verdict and maps the verdict to an exit code.
fn report<C>(out: &mut impl Write, r: SolveReport<C>, show: impl Fn(&C) -> String) -> Outcome {
    eprintln!("nodes: {}", r.nodes);
    let verdict = r.outcome.verdict();
    match r.outcome.certificate() {
        Some(c) => print(out, &show(c))?,
        None => print(out, &format!("{verdict}\n"))?,
    }
    Ok(match verdict {
        Verdict::Solved => YES,
        Verdict::Infeasible => NO,
        Verdict::Unknown => UNKNOWN,
    })
}

fn compute(out: &mut impl Write, what: ComputeWhat, graph: &Path) -> Outcome {
    let g = format::parse_graph(&read(graph)?)?;
    let text = match what {
        ComputeWhat::Sods => format::write_pairs(&second_order_profile(&g).pairs),
        ComputeWhat::Xy => format::write_pairs(&neighbor_degree_sum(&g).pairs),
        ComputeWhat::Jdm => format::write_jdm(&jdm_of_graph(&g)?),
    };
    print(out, &text)?;
    Ok(YES)
}

fn check(out: &mut impl Write, test: CheckTest, input: &Path) -> Outcome {
    let text = read(input)?;
    match test {
        CheckTest::Hh => {
            let seq = format::parse_degree_sequence(&text)?;
            match havel_hakimi(&seq) {
                Some(g) => {
                    print(out, &format::write_graph(&g))?;
                    Ok(YES)
                }
                None => {
                    print(out, "not graphical\n")?;
                    Ok(NO)
                }
            }
        }
        CheckTest::Eg => {
            let ok = erdos_gallai(&format::parse_degree_sequence(&text)?);
            print(out, if ok { "graphical\n" } else { "not graphical\n" })?;
            Ok(yes_no(ok))
        }
        CheckTest::Jdm => {
            let verdict = jdm_graphical(&format::parse_jdm(&text)?);
            match &verdict.violation {
                None => {
                    let sizes: Vec<String> =
                        verdict.class_sizes.iter().map(|s| s.map_or("?".into(), |s| s.to_string())).collect();
                    print(out, &format!("graphical\nclass sizes: {}\n", sizes.join(" ")))?;
                }
                Some(v) => print(out, &format!("not graphical: {v}\n"))?,
            }
            Ok(yes_no(verdict.is_graphical()))
        }
    }
}

fn reduce(reduction: Reduction, input: &Path, output: &Path, auto_rescale: bool) -> Outcome {
    let text = read(input)?;
    let written = match reduction {
        Reduction::TpBf => format::write_basket_filling(&reductions::tp_to_bf(&format::parse_three_partition(&text)?)),
        Reduction::BfSods => {
            let bf = format::parse_basket_filling(&text)?;
            if bf.baskets().iter().any(|b| b.count == 1) {
                return Err(Failure(
                    "instance has single-item baskets; remove them and their forced items before reducing".into(),
                ));
            }
            let target = if auto_rescale {
                let (used, target, _) = reductions::bf_to_sods_auto_rescale(&bf)?;
                if used != bf {
                    eprintln!("rescaled by factor {}", reductions::rescale_factor(&bf));
                }
                target
            } else {
                reductions::bf_to_sods(&bf).map_err(|e| Failure(format!("{e} (try --auto-rescale)")))?.0
            };
            format::write_pairs(&target.pairs)
        }
        Reduction::TpBisods => {
            format::write_pairs(&reductions::tp_to_bipartite_sods(&format::parse_three_partition(&text)?)?.0.pairs)
        }
        Reduction::TpXy => format::write_pairs(&reductions::tp_to_xy(&format::parse_three_partition(&text)?).0.pairs),
    };
    if auto_rescale && !matches!(reduction, Reduction::BfSods) {
        eprintln!("--auto-rescale only affects bf-sods; ignored");
    }
    write_file(output, &written)?;
    Ok(YES)
}

fn solve(out: &mut impl Write, problem: Problem, input: &Path, budget: SearchBudget) -> Outcome {
    let text = read(input)?;
    match problem {
        Problem::Tp => {
            let tp = format::parse_three_partition(&text)?;
            report(out, solvers::solve_tp(&tp, budget), format::write_triples)
        }
        Problem::Bf => {
            let bf = format::parse_basket_filling(&text)?;
            report(out, solvers::solve_bf(&bf, budget), format::write_assignment)
        }
        Problem::Sods => {
            let target = format::parse_sods_target(&text)?;
            report(out, solvers::realize_sods(&target, budget), format::write_graph)
        }
        Problem::Bisods => {
            let target = format::parse_sods_target(&text)?;
            report(out, solvers::realize_sods_bipartite(&target, budget), format::write_graph)
        }
        Problem::Xy => {
            let target = format::parse_xy_target(&text)?;
            report(out, solvers::realize_xy(&target, budget), format::write_graph)
        }
        Problem::Jdmfeas => {
            let agg = format::parse_jdm_aggregates(&text)?;
            let r = solvers::jdm_feasible_from_aggregates(&agg.sizes, &agg.totals, budget, RowEquation::default());
            report(out, r, format::write_jdm)
        }
    }
}

fn verify(out: &mut impl Write, problem: VerifyProblem, instance: &Path, certificate: &Path) -> Outcome {
    let inst = read(instance)?;
    let cert = read(certificate)?;
    let ok = match problem {
        VerifyProblem::Tp => solvers::verify_tp(&format::parse_three_partition(&inst)?, &format::parse_triples(&cert)?),
        VerifyProblem::Bf => {
            let bf = format::parse_basket_filling(&inst)?;
            solvers::verify_bf(&bf, &format::parse_assignment(&cert, bf.item_count())?)
        }
        VerifyProblem::Sods => solvers::verify_sods(&format::parse_graph(&cert)?, &format::parse_sods_target(&inst)?),
        VerifyProblem::Bisods => {
            let g = format::parse_graph(&cert)?;
            bipartition(&g).is_some() && solvers::verify_sods(&g, &format::parse_sods_target(&inst)?)
        }
        VerifyProblem::Xy => solvers::verify_xy(&format::parse_graph(&cert)?, &format::parse_xy_target(&inst)?),
        VerifyProblem::Jdm => {
            let g = format::parse_graph(&cert)?;
            jdm_of_graph(&g).ok() == Some(format::parse_jdm(&inst)?)
        }
    };
    print(out, if ok { "valid\n" } else { "invalid\n" })?;
    Ok(yes_no(ok))
}

fn decode(out: &mut impl Write, gadget: Gadget, graph: &Path, source: &Path) -> Outcome {
    let g = format::parse_graph(&read(graph)?)?;
    let src = read(source)?;
    let decoded = match gadget {
        Gadget::Sods => {
            let bf = format::parse_basket_filling(&src)?;
            let (used, _, roles) = reductions::bf_to_sods_auto_rescale(&bf)?;
            reductions::decode_sods_solution(&g, &used, &roles).map(|s| format::write_assignment(&s))
        }
        Gadget::Bisods => {
            let tp = format::parse_three_partition(&src)?;
            reductions::decode_bipartite_solution(&g, &tp).map(|p| format::write_triples(&p))
        }
        Gadget::Xy => {
            let tp = format::parse_three_partition(&src)?;
            reductions::decode_xy_solution(&g, &tp).map(|p| format::write_triples(&p))
        }
    };
    match decoded {
        Ok(text) => {
            print(out, &text)?;
            Ok(YES)
        }
        Err(e) => {
            print(out, &format!("not decodable: {e}\n"))?;
            Ok(NO)
        }
    }
}

fn gen(out: &mut impl Write, what: GenWhat) -> Outcome {
    let text = match what {
        GenWhat::Tp { seed, m, w } => format::write_three_partition(&generate::gen_tp_solvable(seed, m, w)?),
        GenWhat::Graph { seed, n, p } => format::write_graph(&generate::gen_graph(seed, n, p)?),
    };
    print(out, &text)?;
    Ok(YES)
}

fn run_bench(out: &mut impl Write, dir: &Path, budget: SearchBudget) -> Outcome {
    let records = bench::bench_run(dir, budget).map_err(|e| Failure(format!("{}: {e}", dir.display())))?;
    print(out, &bench::to_csv(&records))?;
    for r in records.iter().filter(|r| r.is_error()) {
        eprintln!("{}: {}", r.id, r.verdict);
    }
    if !records.is_empty() && records.iter().all(|r| r.is_error()) {
        return Err(Failure("every instance failed".into()));
    }
    Ok(YES)
}

fn dispatch(cli: Cli, out: &mut impl Write) -> Outcome {
    match cli.command {
        Command::Compute { what, graph } => compute(out, what, &graph),
        Command::Check { test, input } => check(out, test, &input),
        Command::Reduce { reduction, input, output, auto_rescale } => reduce(reduction, &input, &output, auto_rescale),
        Command::Solve { problem, input, budget } => solve(out, problem, &input, budget.budget()),
        Command::Verify { problem, instance, certificate } => verify(out, problem, &instance, &certificate),
        Command::Decode { gadget, graph, source } => decode(out, gadget, &graph, &source),
        Command::Gen { what } => gen(out, what),
        Command::Bench { dir, budget } => run_bench(out, &dir, budget.budget()),
    }
}

fn run(argv: impl IntoIterator<Item = std::ffi::OsString>) -> u8 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { USAGE } else { YES };
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = match dispatch(cli, &mut out) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            USAGE
        }
    };
    let _ = out.flush();
    code
}

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os()))
}
