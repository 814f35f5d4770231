use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use ramcount_core::counting::{enumerate_profiles, n_four_closed, n_gen, n_three, validate_profile};
use ramcount_core::degeneration::{analyze_limit, check_hypotheses, insep_limit_step, MapFamily};
use ramcount_core::pencil::{count_maps_bruteforce, sample_general_points, solve_three_point, DEFAULT_BUDGET};
use ramcount_core::schubert::intersection_expansion;
use ramcount_core::{CharClass, Characteristic, Count, Error, FiniteField, Pencil, ProjPoint};

mod error;

use error::CliError;

const DEFAULT_SEED: u64 = 20240601;
const SCHEMA: &str = "ramcount/v1";
const TABLE_COLUMNS: &str = "schema,orders,p,d,class,count,closed_form,schubert,match,reason";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Command {
    Count,
    Schubert,
    Solve3,
    Search,
    Family,
    Transform,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

/// Counts and constructs separable maps of the projective line with
/// prescribed ramification in odd characteristic.
#[derive(Parser, Debug)]
#[command(name = "ramcount", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Characteristic: an odd prime or `inf` (a comma list for `table`).
    #[arg(long)]
    p: Option<String>,
    /// Extension degree of the field of definition.
    #[arg(long)]
    k: Option<u32>,
    /// Degree of the maps (the largest degree for `table`).
    #[arg(long)]
    d: Option<u32>,
    /// Ramification orders, comma separated.
    #[arg(long)]
    orders: Option<String>,
    /// Marked points, comma separated; `inf` is the point at infinity.
    #[arg(long)]
    points: Option<String>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Largest number of pencils an enumeration may visit.
    #[arg(long)]
    budget: Option<u128>,
    /// Path to a family description.
    #[arg(long)]
    family: Option<PathBuf>,
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
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let format = cli.format.unwrap_or(match cli.command {
        Command::Schubert => Format::Text,
        Command::Table => Format::Csv,
        _ => Format::Json,
    });
    let out = match cli.command {
        Command::Count => count(cli, format)?,
        Command::Schubert => schubert(cli, format)?,
        Command::Solve3 => solve3(cli, format)?,
        Command::Search => search(cli, format)?,
        Command::Family => family(cli, format)?,
        Command::Transform => transform(cli, format)?,
        Command::Table => table(cli, format)?,
    };
    Ok(if out.ends_with('\n') { out } else { out + "\n" })
}

fn require<'a, T>(v: &'a Option<T>, flag: &str) -> Result<&'a T, CliError> {
    v.as_ref().ok_or_else(|| CliError::Invalid(format!("--{flag} is required")))
}

fn parse_orders(cli: &Cli) -> Result<Vec<u32>, CliError> {
    let text = require(&cli.orders, "orders")?;
    let orders = text
        .split(',')
        .map(|s| s.trim().parse::<u32>().map_err(|_| CliError::Invalid(format!("bad order {s:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if orders.is_empty() {
        return Err(CliError::Invalid("--orders is empty".into()));
    }
    Ok(orders)
}

fn parse_char(s: &str) -> Result<Characteristic, CliError> {
    Ok(s.parse::<Characteristic>()?)
}

fn field(cli: &Cli) -> Result<FiniteField, CliError> {
    let p = match parse_char(require(&cli.p, "p")?)? {
        Characteristic::Finite(p) => p,
        Characteristic::Infinity => return Err(CliError::Invalid("this command needs a finite characteristic".into())),
    };
    Ok(FiniteField::new(p, cli.k.unwrap_or(1))?)
}

fn budget(cli: &Cli) -> Result<u128, CliError> {
    if let Some(b) = cli.budget {
        return Ok(b);
    }
    match std::env::var("RAMCOUNT_BUDGET") {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Invalid(format!("bad RAMCOUNT_BUDGET {s:?}"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

/// The degree forced by the orders, checked against `--d` when given.
fn degree_from(cli: &Cli, orders: &[u32]) -> Result<u32, CliError> {
    let codim: u32 = orders.iter().map(|e| e.saturating_sub(1)).sum();
    if codim % 2 != 0 {
        return Err(CliError::Invalid(format!("orders {orders:?} have odd total ramification")));
    }
    let d = codim / 2 + 1;
    match cli.d {
        Some(given) if given != d => Err(CliError::Invalid(format!("orders {orders:?} force degree {d}, not {given}"))),
        _ => Ok(d),
    }
}

fn json_out(mut v: Value, kind: &str) -> String {
    v["schema"] = Value::from(format!("{SCHEMA}/{kind}"));
    serde_json::to_string_pretty(&v).expect("serializable") + "\n"
}

fn unsupported(format: Format, command: &str) -> CliError {
    CliError::Invalid(format!("{command} has no {format:?} output").to_lowercase())
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn count(cli: &Cli, format: Format) -> Result<String, CliError> {
    let p = parse_char(require(&cli.p, "p")?)?;
    let orders = parse_orders(cli)?;
    let profile = validate_profile(&orders, p)?;
    degree_from(cli, &orders)?;
    let res = if orders.len() == 3 && profile.invalid_reason().is_none() {
        n_three(orders[0], orders[1], orders[2], p)?
    } else {
        n_gen(&profile)?
    };
    Ok(match format {
        Format::Json => json_out(res.to_json(), "count"),
        Format::Csv => format!("{TABLE_COLUMNS}\n{}\n", table_row(&orders, p)?.csv()),
        Format::Text => match &res.reason {
            Some(r) => format!("{} ({r})\n", res.value),
            None => format!("{}\n", res.value),
        },
    })
}

fn schubert(cli: &Cli, format: Format) -> Result<String, CliError> {
    let orders = parse_orders(cli)?;
    let d = degree_from(cli, &orders)?;
    let (n, steps) = intersection_expansion(d, &orders)?;
    match format {
        Format::Text => Ok(format!("{n}\n")),
        Format::Json => Ok(json_out(
            json!({
                "d": d,
                "orders": orders,
                "count": n,
                "expansion": steps.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
            }),
            "schubert",
        )),
        Format::Csv => Err(unsupported(format, "schubert")),
    }
}

fn solve3(cli: &Cli, format: Format) -> Result<String, CliError> {
    let k = field(cli)?;
    let orders = parse_orders(cli)?;
    let [e1, e2, e3] = orders[..] else {
        return Err(CliError::Invalid("solve3 takes exactly three orders".into()));
    };
    let d = degree_from(cli, &orders)?;
    let sol = solve_three_point(d as usize, e1 as usize, e2 as usize, e3 as usize, &k)?;
    let law = n_three(e1, e2, e3, Characteristic::Finite(k.characteristic()))?;
    let map = sol.map.as_ref().map(|m| m.to_text());
    match format {
        Format::Json => Ok(json_out(
            json!({
                "p": k.characteristic(),
                "k": k.degree(),
                "d": d,
                "orders": orders,
                "points": ["0", "inf", "1"],
                "m": sol.m,
                "separable": sol.separable,
                "map": map,
                "pencil": sol.pencil.as_ref().map(Pencil::to_json),
                "law": law.to_json(),
            }),
            "solve3",
        )),
        Format::Text => Ok(format!(
            "m: {}\nseparable: {}\nmap: {}\nlaw: {}\n",
            sol.m,
            sol.separable,
            map.as_deref().unwrap_or("none"),
            law.value
        )),
        Format::Csv => Err(unsupported(format, "solve3")),
    }
}

fn search(cli: &Cli, format: Format) -> Result<String, CliError> {
    let k = field(cli)?;
    let orders = parse_orders(cli)?;
    let d = degree_from(cli, &orders)?;
    let points = match &cli.points {
        Some(text) => text.split(',').map(|s| ProjPoint::parse(&k, s)).collect::<Result<Vec<_>, _>>()?,
        None => sample_general_points(orders.len(), &k, cli.seed, None, &|_| false)?,
    };
    if points.len() != orders.len() {
        return Err(CliError::Invalid(format!("{} points for {} orders", points.len(), orders.len())));
    }
    let assignments: Vec<(ProjPoint, u32)> = points.iter().copied().zip(orders.iter().copied()).collect();
    let rep = count_maps_bruteforce(d as usize, &assignments, &k, budget(cli)?)?;
    let pts: Vec<String> = points.iter().map(|pt| pt.format(&k)).collect();
    match format {
        Format::Json => {
            let mut v = rep.to_json();
            v["p"] = json!(k.characteristic());
            v["k"] = json!(k.degree());
            v["d"] = json!(d);
            v["orders"] = json!(orders);
            v["points"] = json!(pts);
            Ok(json_out(v, "search"))
        }
        Format::Text => {
            let mut out = format!(
                "points: {}\norders: {}\npencils: {}\nmatched: {}\nseparable: {}\ninseparable: {}\nwith base points: {}\n",
                pts.join(","),
                join(&orders, ","),
                rep.total,
                rep.matched,
                rep.separable,
                rep.inseparable,
                rep.with_base_points
            );
            for w in &rep.witnesses {
                if let Ok((m, _)) = w.to_ratmap() {
                    out.push_str(&format!("witness: {}\n", m.to_text()));
                }
            }
            Ok(out)
        }
        Format::Csv => Err(unsupported(format, "search")),
    }
}

fn load_family(cli: &Cli) -> Result<MapFamily, CliError> {
    let k = field(cli)?;
    let path = require(&cli.family, "family")?;
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    Ok(MapFamily::parse(&k, &text)?)
}

fn family(cli: &Cli, format: Format) -> Result<String, CliError> {
    let fam = load_family(cli)?;
    let k = fam.field().clone();
    let mut pencils = BTreeSet::new();
    let mut differents = BTreeSet::new();
    let mut separable = 0u64;
    let mut inseparable = 0u64;
    let mut degenerate = 0u64;
    for c in k.elements() {
        match fam.member(c) {
            Ok((m, base)) if base.is_empty() && m.degree() == fam.degree() => {
                pencils.insert(m.pencil());
                if m.is_separable() {
                    separable += 1;
                    if let Ok(div) = m.different_divisor() {
                        differents.insert(serde_json::to_string(&div.to_json(&k)).expect("serializable"));
                    }
                } else {
                    inseparable += 1;
                }
            }
            Ok(_) | Err(Error::ConstantMap(_)) | Err(Error::NotCoprime) => degenerate += 1,
            Err(e) => return Err(e.into()),
        }
    }
    let common = (differents.len() == 1 && separable as usize + degenerate as usize == k.order() as usize)
        .then(|| serde_json::from_str::<Value>(differents.first().unwrap()).unwrap());
    let sections: Vec<Value> = fam
        .sections()
        .iter()
        .map(|s| {
            let idx = fam.generic_ram_index(&s.point).ok();
            json!({"limit": s.point.limit().format(&k), "order": s.order, "generic_index": idx})
        })
        .collect();
    let hypotheses = check_hypotheses(&fam)?;
    let limit = analyze_limit(&fam)?;
    match format {
        Format::Json => Ok(json_out(
            json!({
                "p": k.characteristic(),
                "k": k.degree(),
                "d": fam.degree(),
                "family": fam.to_text(),
                "sections": sections,
                "members": {
                    "evaluated": k.order(),
                    "degenerate": degenerate,
                    "separable": separable,
                    "inseparable": inseparable,
                    "distinct_pencils": pencils.len(),
                    "common_different": common,
                },
                "hypotheses": hypotheses,
                "limit": limit.to_json(),
            }),
            "family",
        )),
        Format::Text => Ok(format!(
            "degree: {}\nmembers: {} ({} separable, {} inseparable, {} degenerate)\ndistinct pencils: {}\ncommon different: {}\n\
             iterations: {}\nseparable limit: {}\nlimit: {}/{}\ndegrees: {} {}\ne_infinity: {}\nwarnings: {}\n",
            fam.degree(),
            k.order(),
            separable,
            inseparable,
            degenerate,
            pencils.len(),
            if common.is_some() { "yes" } else { "no" },
            limit.iterations,
            limit.separable_limit,
            limit.limit_num.to_text(),
            limit.limit_den.to_text(),
            limit.d_tilde,
            limit.d0,
            limit.e_infinity,
            limit.warnings.len()
        )),
        Format::Csv => Err(unsupported(format, "family")),
    }
}

fn transform(cli: &Cli, format: Format) -> Result<String, CliError> {
    let fam = load_family(cli)?;
    let step = insep_limit_step(&fam)?;
    let report = analyze_limit(&fam)?;
    match format {
        Format::Json => Ok(json_out(
            json!({
                "family": step.family.to_text(),
                "removed": step.removed,
                "valuation_before": step.valuation_before,
                "valuation_after": step.valuation_after,
                "special_fiber_separable": step.family.special_fiber_separable(),
                "report": report.to_json(),
            }),
            "transform",
        )),
        Format::Text => Ok(step.family.to_text()),
        Format::Csv => Err(unsupported(format, "transform")),
    }
}

struct Row {
    orders: Vec<u32>,
    p: Characteristic,
    d: u32,
    class: CharClass,
    count: Count,
    closed_form: Option<Count>,
    schubert: Option<u64>,
    reason: Option<String>,
}

impl Row {
    fn matches(&self) -> Option<bool> {
        let n = self.count.value()?;
        let checks: Vec<u64> = self.closed_form.and_then(Count::value).into_iter().chain(self.schubert).collect();
        (!checks.is_empty()).then(|| checks.iter().all(|&c| c == n))
    }

    fn csv(&self) -> String {
        let opt = |o: Option<String>| o.unwrap_or_default();
        [
            SCHEMA.to_string(),
            join(&self.orders, " "),
            self.p.to_string(),
            self.d.to_string(),
            self.class.as_str().to_string(),
            self.count.to_string(),
            opt(self.closed_form.map(|c| c.to_string())),
            opt(self.schubert.map(|s| s.to_string())),
            opt(self.matches().map(|m| m.to_string())),
            opt(self.reason.clone()),
        ]
        .join(",")
    }

    fn to_json(&self) -> Value {
        json!({
            "orders": self.orders,
            "p": self.p.to_json(),
            "d": self.d,
            "class": self.class.as_str(),
            "count": self.count.to_json(),
            "closed_form": self.closed_form.map(Count::to_json),
            "schubert": self.schubert,
            "match": self.matches(),
            "reason": self.reason,
        })
    }
}

fn table_row(orders: &[u32], p: Characteristic) -> Result<Row, Error> {
    let profile = validate_profile(orders, p)?;
    let res = n_gen(&profile)?;
    let d = profile.d();
    let closed_form = match orders {
        &[a, b, c, e] => Some(n_four_closed([a, b, c, e], p)?),
        _ => None,
    };
    let schubert = (p.exceeds(d) && profile.is_valid())
        .then(|| intersection_expansion(d, orders).map(|(n, _)| n))
        .transpose()?;
    let reason = res.reason.clone().or_else(|| (res.value == Count::Unknown).then(|| "unknown".to_string()));
    Ok(Row { orders: orders.to_vec(), p, d, class: res.char_class, count: res.value, closed_form, schubert, reason })
}

fn table(cli: &Cli, format: Format) -> Result<String, CliError> {
    let mut ps = require(&cli.p, "p")?.split(',').map(parse_char).collect::<Result<Vec<_>, _>>()?;
    ps.sort();
    ps.dedup();
    let d_max = *require(&cli.d, "d")?;
    if d_max < 2 {
        return Err(CliError::Invalid("--d must be at least 2".into()));
    }
    let mut profiles = Vec::new();
    for d in 2..=d_max {
        for n in 3..=(2 * d as usize - 2) {
            profiles.extend(enumerate_profiles(n, d, 2));
        }
    }
    profiles.sort();
    let jobs: Vec<(&Vec<u32>, Characteristic)> =
        profiles.iter().flat_map(|o| ps.iter().map(move |&p| (o, p))).collect();
    let rows = jobs.par_iter().map(|&(o, p)| table_row(o, p)).collect::<Result<Vec<_>, _>>()?;
    match format {
        Format::Csv => {
            let mut out = format!("{TABLE_COLUMNS}\n");
            for r in &rows {
                out.push_str(&r.csv());
                out.push('\n');
            }
            Ok(out)
        }
        Format::Json => Ok(json_out(json!({"rows": rows.iter().map(Row::to_json).collect::<Vec<_>>()}), "table")),
        Format::Text => {
            let mut out = String::new();
            for r in &rows {
                out.push_str(&format!("({}) p={} d={} {} {}\n", join(&r.orders, ","), r.p, r.d, r.class.as_str(), r.count));
            }
            Ok(out)
        }
    }
}
