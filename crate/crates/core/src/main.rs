use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use superhopf::antipode::{hopf_census, solve_antipode, verify_properties, AntipodeStatus};
use superhopf::axioms::check_all;
use superhopf::catalog::{catalog, Catalog};
use superhopf::classify::{find_isomorphism, fingerprint, IsoStatus};
use superhopf::constructions::{dual, evaluate, tensor_product, variant, VariantKind};
use superhopf::search::{
    admissible_counits, classify_odd_extensions, connected_decision, enumerate_comultiplications, ConnectedOutcome, GridSpec,
    SearchStatus, DEFAULT_BUDGET,
};
use superhopf::structures::{deserialize, serialize, Document};
use superhopf::{Error, SuperBialgebraData};

const CATALOG_ENV: &str = "SUPERHOPF_CATALOG_DIR";

#[derive(Parser)]
#[command(name = "superhopf", version, about = "Exact checks on superbialgebras and Hopf superalgebras")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Exit with 2 when a result is undetermined or grid-limited.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the superbialgebra axioms.
    Verify(Target),
    /// Solve for the antipode of one record, or of the whole catalog.
    Antipode {
        #[arg(long, conflicts_with = "id")]
        census: bool,
        #[arg(long)]
        id: Option<String>,
    },
    /// Print the isomorphism invariants of a record.
    Fingerprint {
        #[arg(long)]
        id: String,
    },
    /// Search for an isomorphism between two records.
    Iso { a: String, b: String },
    /// Enumerate the comultiplications a superalgebra carries.
    SearchComult {
        algebra: String,
        /// Comma-separated fallback values for free unknowns.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// List the counits a superalgebra admits.
    Counits { algebra: String },
    /// Classify the superalgebras obtained by adjoining odd generators.
    Extend {
        even_algebra: String,
        #[arg(long)]
        odd: usize,
    },
    /// Decide the connected case with `n` odd generators.
    Connected {
        #[arg(long)]
        odd: usize,
    },
    /// Build op, cop, dual or tensor records.
    Construct {
        /// One of op, cop, opcop, dual, tensor.
        op: String,
        #[arg(long)]
        id: Option<String>,
        /// Operands of `tensor`.
        operands: Vec<String>,
    },
    /// Write every catalog record into a directory.
    Export { dir: PathBuf },
    /// Read and validate a document.
    Import { file: PathBuf },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Target {
    #[arg(long)]
    all: bool,
    #[arg(long)]
    id: Option<String>,
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Outcome {
    Ok,
    Undetermined,
    Violation,
}

struct Report {
    lines: Vec<String>,
    payload: Value,
    outcome: Outcome,
}

impl Report {
    fn new(payload: Value) -> Self {
        Report { lines: Vec::new(), payload, outcome: Outcome::Ok }
    }

    fn line(mut self, s: impl Into<String>) -> Self {
        self.lines.push(s.into());
        self
    }

    fn with(mut self, outcome: Outcome) -> Self {
        self.outcome = self.outcome.max(outcome);
        self
    }
}

fn status_outcome(s: SearchStatus) -> Outcome {
    match s {
        SearchStatus::Complete => Outcome::Ok,
        SearchStatus::GridLimited => Outcome::Undetermined,
    }
}

fn load_catalog() -> Result<&'static Catalog, Error> {
    match std::env::var_os(CATALOG_ENV) {
        Some(dir) => Ok(Box::leak(Box::new(Catalog::load_dir(&PathBuf::from(dir))?))),
        None => Ok(catalog()),
    }
}

fn render(data: &SuperBialgebraData) -> Vec<String> {
    let space = data.space;
    let mut out = vec![format!("{} on K^({}|{})", data.id, space.n0, space.n1)];
    if let Some(labels) = &data.basis_labels {
        let names: Vec<String> = labels.iter().map(|l| format!("{} = {}", l.name, l.vector)).collect();
        out.push(format!("  labels: {}", names.join(", ")));
    }
    for a in space.basis().into_iter().skip(1) {
        for b in space.basis().into_iter().skip(1) {
            let p = data.mult.get(a, b);
            if !p.is_zero() {
                out.push(format!("  {a}·{b} = {p}"));
            }
        }
    }
    if let (Some(c), Some(e)) = (&data.comult, &data.counit) {
        for b in space.basis().into_iter().skip(1) {
            out.push(format!("  Δ({b}) = {}    ε({b}) = {}", c.get(b), e.value(b)));
        }
    }
    if let Some(s) = &data.antipode {
        for b in space.basis().into_iter().skip(1) {
            out.push(format!("  S({b}) = {}", s.image(b)));
        }
    }
    out
}

fn document_value(data: &SuperBialgebraData) -> Result<Value, Error> {
    Ok(serde_json::to_value(serialize(data))?)
}

fn verify_one(data: &SuperBialgebraData) -> Result<(bool, Value, String), Error> {
    let reports = check_all(data)?;
    let failed: Vec<String> = reports.iter().filter(|r| !r.holds).map(|r| r.axiom.to_string()).collect();
    let ok = failed.is_empty();
    let line = if ok { format!("PASS {}", data.id) } else { format!("FAIL {}: {}", data.id, failed.join(", ")) };
    Ok((ok, json!({"id": data.id, "holds": ok, "failed": failed}), line))
}

fn run(cli: &Cli) -> Result<Report, Error> {
    let cat = load_catalog()?;
    match &cli.command {
        Command::Verify(target) => {
            let records: Vec<SuperBialgebraData> = if target.all {
                cat.bialgebras().map(|e| e.data.clone()).collect()
            } else if let Some(id) = &target.id {
                vec![evaluate(id, cat)?]
            } else {
                let path = target.file.as_ref().expect("clap enforces one target");
                vec![deserialize(&Document::from_json(&std::fs::read_to_string(path)?)?)?]
            };
            let mut report = Report::new(Value::Null);
            let mut rows = Vec::new();
            let mut passed = 0;
            for d in &records {
                let (ok, row, line) = verify_one(d)?;
                passed += usize::from(ok);
                rows.push(row);
                report = report.line(line).with(if ok { Outcome::Ok } else { Outcome::Violation });
            }
            report.payload = json!({"command": "verify", "passed": passed, "failed": records.len() - passed, "records": rows});
            Ok(report.line(format!("{passed} passed, {} failed", records.len() - passed)))
        }
        Command::Antipode { census, id } => {
            if *census {
                let records: Vec<SuperBialgebraData> = cat.bialgebras().map(|e| e.data.clone()).collect();
                let census = hopf_census(&records)?;
                let mut report = Report::new(Value::Null);
                let mut per_dim = std::collections::BTreeMap::<usize, (usize, usize)>::new();
                for (row, d) in census.rows.iter().zip(&records) {
                    let e = per_dim.entry(d.space.dim()).or_default();
                    e.0 += 1;
                    e.1 += usize::from(row.result.status.is_found());
                    if !row.result.precondition_holds {
                        report = report.line(format!("FAIL {}: not a superbialgebra", row.id)).with(Outcome::Violation);
                    }
                }
                for (dim, (n, found)) in &per_dim {
                    report = report.line(format!("dim {dim}: {found} of {n} records carry an antipode"));
                }
                for id in census.found() {
                    report = report.line(format!("  Found {id}"));
                }
                report.payload = json!({
                    "command": "antipode --census",
                    "per_dim": per_dim.iter().map(|(d, (n, f))| json!({"dim": d, "records": n, "found": f})).collect::<Vec<_>>(),
                    "found": census.found(),
                });
                Ok(report)
            } else {
                let id = id.as_ref().ok_or_else(|| Error::Parse("antipode needs --census or --id".into()))?;
                let data = evaluate(id, cat)?;
                let result = solve_antipode(&data)?;
                let mut report = Report::new(Value::Null).line(format!("{}: {}", data.id, result.status.name()));
                if !result.precondition_holds {
                    report = report.line("  input fails a superbialgebra axiom").with(Outcome::Violation);
                }
                let mut payload = json!({"command": "antipode", "id": data.id, "status": result.status.name()});
                match &result.status {
                    AntipodeStatus::Found(s) => {
                        for b in data.space.basis() {
                            report = report.line(format!("  S({b}) = {}", s.image(b)));
                        }
                        let props = verify_properties(&data, Some(s))?;
                        for c in &props.checks {
                            let verdict = match c.holds {
                                Some(true) => "holds",
                                Some(false) => "FAILS",
                                None => "n/a",
                            };
                            report = report.line(format!("  property {}: {} {verdict}", c.number, c.name));
                        }
                        if !props.all_hold() {
                            report = report.with(Outcome::Violation);
                        }
                        payload["images"] = json!(data.space.basis().iter().map(|&b| s.image(b).to_string()).collect::<Vec<_>>());
                        payload["properties"] = serde_json::to_value(&props.checks)?;
                    }
                    AntipodeStatus::NotFound(cert) => {
                        report = report.line(format!("  certificate: {cert}"));
                        payload["certificate"] = json!(cert.to_string());
                    }
                    AntipodeStatus::NonUnique(n) => {
                        report = report.line(format!("  solution space of dimension {n}")).with(Outcome::Violation);
                        payload["dimension"] = json!(n);
                    }
                }
                report.payload = payload;
                Ok(report)
            }
        }
        Command::Fingerprint { id } => {
            let data = evaluate(id, cat)?;
            let fp = fingerprint(&data)?;
            let mut report = Report::new(json!({"command": "fingerprint", "id": data.id, "fingerprint": fp}));
            report = report.line(format!("{}: {fp}", data.id));
            Ok(report)
        }
        Command::Iso { a, b } => {
            let (d1, d2) = (evaluate(a, cat)?, evaluate(b, cat)?);
            let result = find_isomorphism(&d1, &d2)?;
            let outcome = match result.status {
                IsoStatus::Iso(_) => Outcome::Ok,
                IsoStatus::NonIso(_) => Outcome::Violation,
                IsoStatus::Undetermined => Outcome::Undetermined,
            };
            let mut payload = result.to_json();
            payload["command"] = json!("iso");
            payload["a"] = json!(d1.id);
            payload["b"] = json!(d2.id);
            Ok(Report::new(payload).line(format!("{} vs {}: {result}", d1.id, d2.id)).with(outcome))
        }
        Command::SearchComult { algebra, grid, budget } => {
            let data = evaluate(algebra, cat)?;
            let grid = match grid {
                Some(g) => GridSpec::parse(g)?,
                None => GridSpec::default(),
            };
            let search = enumerate_comultiplications(&data, &grid, *budget)?;
            let mut report = Report::new(Value::Null)
                .line(format!(
                    "{}: {} structures, {} ({} branches, generators {})",
                    data.id,
                    search.results.len(),
                    search.status,
                    search.branches,
                    search.generators.join(", ")
                ))
                .with(status_outcome(search.status));
            let mut rows = Vec::new();
            for (k, (comult, eps)) in search.results.iter().enumerate() {
                let mut found = data.clone();
                found.comult = Some(comult.clone());
                found.counit = Some(eps.clone());
                found.id = format!("{}#{}", data.id, k + 1);
                report.lines.extend(render(&found));
                rows.push(document_value(&found)?);
            }
            report.payload = json!({
                "command": "search-comult", "id": data.id, "status": search.status.to_string(),
                "branches": search.branches, "budget_exhausted": search.budget_exhausted, "results": rows,
            });
            Ok(report)
        }
        Command::Counits { algebra } => {
            let data = evaluate(algebra, cat)?;
            let found = admissible_counits(&data, &GridSpec::default(), DEFAULT_BUDGET)?;
            let values: Vec<Vec<String>> =
                found.counits.iter().map(|e| e.values().iter().map(ToString::to_string).collect()).collect();
            let mut report = Report::new(json!({"command": "counits", "id": data.id, "status": found.status.to_string(), "counits": values}))
                .line(format!("{}: {} counits, {}", data.id, values.len(), found.status))
                .with(status_outcome(found.status));
            for v in &values {
                report = report.line(format!("  ε = ({})", v.join(", ")));
            }
            Ok(report)
        }
        Command::Extend { even_algebra, odd } => {
            let data = evaluate(even_algebra, cat)?;
            let ext = classify_odd_extensions(&data, *odd)?;
            let mut report = Report::new(Value::Null)
                .line(format!("{}: {} classes, {}", data.id, ext.classes.len(), ext.status))
                .with(status_outcome(ext.status));
            let mut rows = Vec::new();
            for c in &ext.classes {
                report.lines.extend(render(c));
                rows.push(document_value(c)?);
            }
            report.payload = json!({"command": "extend", "id": data.id, "status": ext.status.to_string(), "classes": rows});
            Ok(report)
        }
        Command::Connected { odd } => match connected_decision(*odd)? {
            ConnectedOutcome::Structure(d) => {
                let mut report = Report::new(json!({"command": "connected", "odd": odd, "exists": true, "structure": document_value(&d)?}))
                    .line(format!("connected superbialgebra with {odd} odd generator(s) exists"));
                report.lines.extend(render(&d));
                Ok(report)
            }
            ConnectedOutcome::Nonexistent { pair, residual } => Ok(Report::new(json!({
                "command": "connected", "odd": odd, "exists": false,
                "pair": [pair.0.to_string(), pair.1.to_string()], "residual": residual.to_string(),
            }))
            .line(format!("no connected superbialgebra with {odd} odd generators"))
            .line(format!("  Δ({0})Δ({1}) - Δ({0}{1}) = {residual}", pair.0, pair.1))),
        },
        Command::Construct { op, id, operands } => {
            let data = match op.as_str() {
                "tensor" => match operands.as_slice() {
                    [a, b] => tensor_product(&evaluate(a, cat)?, &evaluate(b, cat)?)?,
                    _ => return Err(Error::Parse("construct tensor takes two operands".into())),
                },
                "dual" => dual(&evaluate(required(id, op)?, cat)?)?,
                other => variant(&evaluate(required(id, op)?, cat)?, other.parse::<VariantKind>()?)?,
            };
            let (ok, _, verdict) = verify_one(&data)?;
            let mut report = Report::new(json!({"command": "construct", "holds": ok, "document": document_value(&data)?}));
            report.lines.extend(render(&data));
            Ok(report.line(verdict).with(if ok { Outcome::Ok } else { Outcome::Violation }))
        }
        Command::Export { dir } => {
            cat.export(dir)?;
            let n = cat.entries().len();
            Ok(Report::new(json!({"command": "export", "dir": dir, "records": n})).line(format!("wrote {n} records to {}", dir.display())))
        }
        Command::Import { file } => {
            let doc = Document::from_json(&std::fs::read_to_string(file)?)?;
            let data = deserialize(&doc)?;
            let (ok, row, line) = verify_one(&data)?;
            let mut report = Report::new(json!({"command": "import", "record": row}));
            report.lines.extend(render(&data));
            Ok(report.line(line).with(if ok { Outcome::Ok } else { Outcome::Violation }))
        }
    }
}

fn required<'a>(id: &'a Option<String>, op: &str) -> Result<&'a str, Error> {
    id.as_deref().ok_or_else(|| Error::Parse(format!("construct {op} needs --id")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(64) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            let text = if cli.json {
                serde_json::to_string_pretty(&report.payload).expect("json values serialize")
            } else {
                report.lines.join("\n")
            };
            let _ = writeln!(out, "{text}");
            match report.outcome {
                Outcome::Ok => ExitCode::SUCCESS,
                Outcome::Undetermined if cli.strict => ExitCode::from(2),
                Outcome::Undetermined => ExitCode::SUCCESS,
                Outcome::Violation => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("superhopf: {e}");
            ExitCode::from(64)
        }
    }
}
