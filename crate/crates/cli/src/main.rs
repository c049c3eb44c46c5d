use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::builder::TypedValueParser;
use clap::{Args, Parser, Subcommand, ValueEnum};
use quasipave::counting::{grid_counts_csv, line_counts_csv};
use quasipave::decomposition::{
    count_nice_grid, count_nice_lines, decompose_grid_with_budget, decompose_lines_with_budget,
    GRID_PARTITION_BUDGET, LINES_PARTITION_BUDGET,
};
use quasipave::families::generators_csv;
use quasipave::io::{DecompositionJson, MatroidFile, QuasiFile};
use quasipave::{
    c_grid, c_lines, ci_ideal_generators, decompose_to_tame, grid_matroid, line_matroid, BigCount, Decomposition,
    ElementSet, Error, GridLayout, LineArrangement, Matroid, Method,
};
use serde_json::{json, Value};

// known component counts of the k x l grid
const TABLE_GRID: [(usize, usize, u64); 5] = [(4, 4, 2), (4, 5, 22), (5, 5, 127), (4, 6, 86), (5, 6, 417)];
// known component counts for n general lines
const TABLE_LINES: [(usize, u64); 5] = [(4, 2), (5, 2), (6, 17), (7, 58), (8, 191)];

#[derive(Parser)]
#[command(name = "quasipave", version, about = "Quasi-paving matroids, grid and line-arrangement components")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Largest number of grid hyperplanes whose partitions are enumerated.
    #[arg(long, env = "QUASIPAVE_GRID_BUDGET", default_value_t = GRID_PARTITION_BUDGET,
          value_parser = clap::value_parser!(u32).range(1..).map(|v| v as usize), global = true)]
    grid_budget: usize,
    /// Largest number of lines whose partitions are enumerated.
    #[arg(long, env = "QUASIPAVE_LINES_BUDGET", default_value_t = LINES_PARTITION_BUDGET,
          value_parser = clap::value_parser!(u32).range(1..).map(|v| v as usize), global = true)]
    lines_budget: usize,
    /// Worker threads for enumeration (0 = all cores).
    #[arg(long, default_value_t = 0, global = true)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Build a matroid and print its rank, ground size and hyperplanes.
    #[command(subcommand)]
    Matroid(MatroidCommand),
    /// Enumerate the components of a grid or line arrangement.
    Decompose {
        #[command(subcommand)]
        family: Family,
        /// Print every component.
        #[arg(long, global = true)]
        list: bool,
    },
    /// Count components.
    Count {
        #[command(subcommand)]
        family: Family,
        #[arg(long, default_value = "enumerate", global = true, value_parser = parse_method)]
        method: Method,
    },
    /// Check the component counts against the reference values.
    Tables,
    /// Check the circuit axioms of a matroid file.
    Validate {
        #[arg(long)]
        file: PathBuf,
    },
    /// Export the minors generating the CI ideal, one `A;B` line each.
    CiGenerators {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        n: usize,
    },
    /// Reduce a quasi-paving representation to a tame core.
    DecomposeToTame {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Subcommand)]
enum MatroidCommand {
    Grid {
        #[command(flatten)]
        size: GridSize,
        /// Also list the circuits.
        #[arg(long)]
        circuits: bool,
    },
    Lines {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        circuits: bool,
    },
    Quasi {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        circuits: bool,
    },
}

#[derive(Args, Clone, Copy)]
struct GridSize {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    l: usize,
}

#[derive(Subcommand, Clone, Copy)]
enum Family {
    Grid(GridSize),
    Lines {
        #[arg(long)]
        n: usize,
    },
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failures that map to exit code 1 rather than 2.
#[derive(Debug)]
struct ValidationFailure(String);

impl std::fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ValidationFailure {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global().ok();
    }
    if cli.grid_budget > GRID_PARTITION_BUDGET {
        eprintln!("warning: grid partition budget raised to {} (default {GRID_PARTITION_BUDGET})", cli.grid_budget);
    }
    if cli.lines_budget > LINES_PARTITION_BUDGET {
        eprintln!("warning: line partition budget raised to {} (default {LINES_PARTITION_BUDGET})", cli.lines_budget);
    }
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let Some(v) = e.downcast_ref::<ValidationFailure>() {
                print!("{v}");
                return ExitCode::from(1);
            }
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<String> {
    match &cli.command {
        Command::Matroid(cmd) => matroid(cli.format, cmd),
        Command::Decompose { family, list } => decompose(cli, *family, *list),
        Command::Count { family, method } => count(cli, *family, *method),
        Command::Tables => tables(cli.format),
        Command::Validate { file } => validate(cli.format, file),
        Command::CiGenerators { k, l, s, t, n } => ci_generators(cli.format, *k, *l, *s, *t, *n),
        Command::DecomposeToTame { file, n } => to_tame(cli.format, file, *n),
    }
}

fn read(path: &PathBuf) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn to_json(v: &Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(v).expect("values serialize"))
}

fn count_value(c: &BigCount) -> Value {
    match quasipave::counting::small(c) {
        Some(x) => json!(x),
        None => json!(c.to_string()),
    }
}

fn matroid(format: Format, cmd: &MatroidCommand) -> anyhow::Result<String> {
    let (m, hyperplanes, labels, circuits): (Matroid, Vec<ElementSet>, Option<Vec<String>>, bool) = match cmd {
        MatroidCommand::Grid { size, circuits } => {
            let p = grid_matroid(size.k, size.l)?;
            let layout = GridLayout::new(size.k, size.l)?;
            let labels = (0..layout.size())
                .map(|x| {
                    let (i, j) = layout.position(x);
                    format!("({},{})", i + 1, j + 1)
                })
                .collect();
            (p.to_matroid(), p.hyperplanes().to_vec(), Some(labels), *circuits)
        }
        MatroidCommand::Lines { n, circuits } => {
            let p = line_matroid(*n)?;
            let arr = LineArrangement::new(*n)?;
            let labels = (0..arr.n_points()).map(|x| arr.point_label(x)).collect();
            (p.to_matroid(), p.hyperplanes().to_vec(), Some(labels), *circuits)
        }
        MatroidCommand::Quasi { file, n, circuits } => {
            let rep = QuasiFile::parse(&read(file)?)?.to_rep(*n)?;
            (rep.matroid(), rep.members().to_vec(), None, *circuits)
        }
    };
    let mut file = MatroidFile::from_matroid(&m)?;
    if let Some(labels) = &labels {
        file = file.with_labels(labels);
    }
    match format {
        Format::Json => Ok(format!("{}\n", file.to_json())),
        Format::Text | Format::Csv => {
            let mut out = format!("ground size: {}\nrank: {}\nhyperplanes: {}\n", m.ground_size(), m.rank(), hyperplanes.len());
            for h in &hyperplanes {
                out.push_str(&format!("  {h}\n"));
            }
            if circuits {
                let list = file.circuit_sets()?;
                out.push_str(&format!("circuits: {}\n", list.len()));
                for c in list {
                    out.push_str(&format!("  {c}\n"));
                }
            }
            Ok(out)
        }
    }
}

fn family_params(family: Family) -> (&'static str, Vec<(&'static str, usize)>) {
    match family {
        Family::Grid(g) => ("grid", vec![("k", g.k), ("l", g.l)]),
        Family::Lines { n } => ("lines", vec![("n", n)]),
    }
}

fn full_decomposition(cli: &Cli, family: Family) -> quasipave::Result<Decomposition> {
    match family {
        Family::Grid(g) => decompose_grid_with_budget(g.k, g.l, cli.grid_budget),
        Family::Lines { n } => decompose_lines_with_budget(n, cli.lines_budget),
    }
}

fn decompose(cli: &Cli, family: Family, list: bool) -> anyhow::Result<String> {
    let (name, params) = family_params(family);
    if list {
        let dec = full_decomposition(cli, family)?;
        return Ok(match cli.format {
            Format::Json => format!("{}\n", DecompositionJson::new(name, &params, &dec)?.to_json()),
            Format::Text | Format::Csv => {
                let mut out = format!("components: {}\n", dec.components.len());
                for c in &dec.components {
                    let blocks: Vec<String> = dec.labeled_blocks(c).iter().map(|b| format!("{{{}}}", b.join(","))).collect();
                    out.push_str(&format!("{} {}\n", blocks.join(" "), c.classification));
                }
                out
            }
        });
    }
    let count = match family {
        Family::Grid(g) => {
            if g.k < 3 || g.l < 3 {
                return Err(Error::BadParams(format!("grid decomposition needs k, l >= 3, got {}x{}", g.k, g.l)).into());
            }
            count_nice_grid(g.k, g.l, cli.grid_budget)?
        }
        Family::Lines { n } => count_nice_lines(n, cli.lines_budget)?,
    };
    Ok(match cli.format {
        Format::Json => {
            let params: serde_json::Map<String, Value> = params.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            to_json(&json!({ "family": name, "params": params, "components": count }))
        }
        Format::Text | Format::Csv => format!("{count}\n"),
    })
}

fn count(cli: &Cli, family: Family, method: Method) -> anyhow::Result<String> {
    let (name, params) = family_params(family);
    let c = match family {
        Family::Grid(g) => quasipave::counting::c_grid_with_budget(g.k, g.l, method, cli.grid_budget)?,
        Family::Lines { n } => quasipave::counting::c_lines_with_budget(n, method, cli.lines_budget)?,
    };
    Ok(match (cli.format, family) {
        (Format::Text, _) => format!("{c}\n"),
        (Format::Csv, Family::Grid(g)) => grid_counts_csv(&[(g.k, g.l, c)]),
        (Format::Csv, Family::Lines { n }) => line_counts_csv(&[(n, c)]),
        (Format::Json, _) => {
            let params: serde_json::Map<String, Value> = params.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            to_json(&json!({ "family": name, "params": params, "method": method.to_string(), "count": count_value(&c) }))
        }
    })
}

struct TableRow {
    family: &'static str,
    key: String,
    method: Method,
    expected: u64,
    got: Result<BigCount, String>,
}

impl TableRow {
    fn pass(&self) -> bool {
        matches!(&self.got, Ok(c) if quasipave::counting::small(c) == Some(self.expected))
    }

    fn got_text(&self) -> String {
        match &self.got {
            Ok(c) => c.to_string(),
            Err(e) => e.clone(),
        }
    }
}

fn tables(format: Format) -> anyhow::Result<String> {
    let mut rows = Vec::new();
    for (k, l, expected) in TABLE_GRID {
        for method in Method::ALL {
            let got = c_grid(k, l, method).map_err(|e| e.to_string());
            rows.push(TableRow { family: "grid", key: format!("({k},{l})"), method, expected, got });
        }
    }
    for (n, expected) in TABLE_LINES {
        let methods: &[Method] = if n >= quasipave::counting::LINES_FORMULA_MIN { &Method::ALL } else { &[Method::Enumerate] };
        for &method in methods {
            let got = c_lines(n, method).map_err(|e| e.to_string());
            rows.push(TableRow { family: "lines", key: format!("n={n}"), method, expected, got });
        }
    }
    let all_pass = rows.iter().all(TableRow::pass);
    let out = match format {
        Format::Text => rows
            .iter()
            .map(|r| {
                let verdict = if r.pass() { "PASS" } else { "FAIL" };
                format!("{verdict} {} {} {}: expected {}, got {}\n", r.family, r.key, r.method, r.expected, r.got_text())
            })
            .collect(),
        Format::Csv => {
            let mut out = String::from("family,params,method,expected,got,status\n");
            for r in &rows {
                let verdict = if r.pass() { "PASS" } else { "FAIL" };
                out.push_str(&format!("{},{},{},{},{},{verdict}\n", r.family, r.key.replace(',', " "), r.method, r.expected, r.got_text()));
            }
            out
        }
        Format::Json => {
            let list: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "family": r.family,
                        "params": r.key,
                        "method": r.method.to_string(),
                        "expected": r.expected,
                        "got": r.got_text(),
                        "pass": r.pass(),
                    })
                })
                .collect();
            to_json(&Value::Array(list))
        }
    };
    if all_pass {
        Ok(out)
    } else {
        Err(ValidationFailure(out).into())
    }
}

fn validate(format: Format, path: &PathBuf) -> anyhow::Result<String> {
    let text = read(path)?;
    let result = MatroidFile::parse(&text).and_then(|f| f.to_matroid());
    let (ok, message, witness) = match &result {
        Ok(m) => (true, format!("valid: ground size {}, rank {}", m.ground_size(), m.rank()), Value::Null),
        Err(e @ Error::AxiomViolation { first, second, element }) => (
            false,
            format!("invalid: {e}"),
            json!({ "first": first.to_one_based(), "second": second.to_one_based(), "element": element + 1 }),
        ),
        Err(e) => (false, format!("invalid: {e}"), Value::Null),
    };
    let out = match format {
        Format::Json => to_json(&json!({ "valid": ok, "message": message, "witness": witness })),
        Format::Text | Format::Csv => format!("{message}\n"),
    };
    if ok {
        Ok(out)
    } else {
        Err(ValidationFailure(out).into())
    }
}

fn ci_generators(format: Format, k: usize, l: usize, s: usize, t: usize, n: usize) -> anyhow::Result<String> {
    let gens = ci_ideal_generators(k, l, s, t, n)?;
    Ok(match format {
        Format::Json => to_json(&Value::Array(
            gens.iter()
                .map(|g| json!({ "A": g.rows.to_one_based(), "B": g.cols.to_one_based() }))
                .collect(),
        )),
        Format::Text | Format::Csv => generators_csv(&gens),
    })
}

fn to_tame(format: Format, path: &PathBuf, n: Option<usize>) -> anyhow::Result<String> {
    let rep = QuasiFile::parse(&read(path)?)?.to_rep(n)?;
    let dec = decompose_to_tame(&rep)?;
    let core_hyperplanes: Vec<ElementSet> = dec
        .core
        .hyperplanes()
        .iter()
        .map(|h| h.iter().map(|x| dec.kept[x]).collect())
        .collect();
    Ok(match format {
        Format::Json => to_json(&json!({
            "steps": dec.steps.iter().map(|s| json!({
                "element": s.element + 1,
                "flat": s.flat.to_one_based(),
                "members": [s.source_pair.0 + 1, s.source_pair.1 + 1],
            })).collect::<Vec<_>>(),
            "core": {
                "elements": dec.kept.iter().map(|x| x + 1).collect::<Vec<_>>(),
                "rank": dec.core.rank(),
                "hyperplanes": core_hyperplanes.iter().map(ElementSet::to_one_based).collect::<Vec<_>>(),
            },
        })),
        Format::Text | Format::Csv => {
            let mut out = format!("steps: {}\n", dec.steps.len());
            for s in &dec.steps {
                out.push_str(&format!(
                    "  delete {} (members {} and {}), flat {}\n",
                    s.element + 1,
                    s.source_pair.0 + 1,
                    s.source_pair.1 + 1,
                    s.flat
                ));
            }
            let kept: ElementSet = dec.kept.iter().copied().collect();
            out.push_str(&format!("core: {kept}, rank {}\n", dec.core.rank()));
            for h in &core_hyperplanes {
                out.push_str(&format!("  {h}\n"));
            }
            out
        }
    })
}
