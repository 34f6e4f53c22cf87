use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use partmaps::enumeration::{Family, Preset};
use partmaps::maps::{andrews_forward, andrews_inverse, macmahon_forward, macmahon_inverse};
use partmaps::qseries::{products, TruncatedSeries};
use partmaps::verify::{self, Exec, VerificationReport};
use partmaps::{ChainTrace, Error, Partition};
use serde_json::json;

mod table;

macro_rules! emit {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).expect("writing to a string")
    };
}

#[derive(Parser)]
#[command(
    name = "partmaps",
    version,
    about = "Partition bijections, counts and q-series checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count the partitions of n in a preset family.
    Count {
        preset: Preset,
        n: u32,
        /// Restrict to one type vector, e.g. 1,1.
        #[arg(long = "type", value_name = "M1,M2,...")]
        type_vector: Option<String>,
        #[arg(long, default_value_t = 1)]
        r: u32,
        /// Also print the partitions.
        #[arg(long)]
        list: bool,
        #[arg(long)]
        json: bool,
    },
    /// List the partitions of n in a preset family, largest first.
    List {
        preset: Preset,
        n: u32,
        #[arg(long = "type", value_name = "M1,M2,...")]
        type_vector: Option<String>,
        #[arg(long, default_value_t = 1)]
        r: u32,
        /// Print each partition's image under the chain (B and D presets).
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run a bijective chain and print every intermediate partition.
    Map {
        direction: Dir,
        chain: Chain,
        /// Partition such as "9+2+2+2"; the empty string is the empty partition.
        partition: String,
        #[arg(long, default_value_t = 2)]
        r: u32,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustively verify an identity.
    Verify {
        identity: Identity,
        #[arg(long)]
        max_n: Option<u32>,
        /// Single value or inclusive range such as 1..3 (andrews only).
        #[arg(long, default_value = "1..3")]
        r: String,
        /// Run sweeps on one thread.
        #[arg(long)]
        sequential: bool,
        #[arg(long)]
        json: bool,
    },
    /// The (m1,m2) refinement table for n: B1 and B2 side by side.
    Table {
        n: u32,
        #[arg(long)]
        json: bool,
    },
    /// Print product coefficients as TSV: degree, marker exponents, value.
    Series {
        product: Product,
        #[arg(long, default_value_t = 20)]
        max_n: u32,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Dir {
    Forward,
    Inverse,
}

#[derive(Clone, Copy, ValueEnum)]
enum Chain {
    Macmahon,
    Andrews,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Identity {
    Macmahon,
    Refined,
    Companion,
    Andrews,
    Phi,
    Lemmas,
    Colored,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Product {
    Euler,
    Mod6,
    Refined,
    Companion,
    ThreeColor,
    Colored,
    Andrews,
}

/// Failure kinds mapped to exit codes.
enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let outcome = run(cli.command, &mut out);
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, out: &mut String) -> Outcome {
    match command {
        Command::Count {
            preset,
            n,
            type_vector,
            r,
            list,
            json,
        } => cmd_count(out, preset, n, type_vector.as_deref(), r, list, json),
        Command::List {
            preset,
            n,
            type_vector,
            r,
            trace,
            json,
        } => cmd_list(out, preset, n, type_vector.as_deref(), r, trace, json),
        Command::Map {
            direction,
            chain,
            partition,
            r,
            json,
        } => cmd_map(out, direction, chain, &partition, r, json),
        Command::Verify {
            identity,
            max_n,
            r,
            sequential,
            json,
        } => {
            let exec = if sequential {
                Exec::Sequential
            } else {
                Exec::Parallel
            };
            cmd_verify(out, identity, max_n, &r, exec, json)
        }
        Command::Table { n, json } => cmd_table(out, n, json),
        Command::Series {
            product,
            max_n,
            r,
            json,
        } => cmd_series(out, product, max_n, r, json),
    }
}

fn parse_type(text: &str) -> Result<Vec<u64>, Failure> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Failure::Usage(format!("bad type vector entry {t:?}")))
        })
        .collect()
}

fn members(family: &Family, n: u32, type_vector: Option<&str>) -> Result<Vec<Partition>, Failure> {
    Ok(match type_vector {
        Some(t) => family.list_with_type(n, &parse_type(t)?)?,
        None => family.list(n)?,
    })
}

fn to_json_list(ps: &[Partition]) -> serde_json::Value {
    json!(ps.iter().map(|p| p.parts().to_vec()).collect::<Vec<_>>())
}

fn print_json(out: &mut String, value: &impl serde::Serialize) {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    writeln!(out, "{text}").expect("writing to a string");
}

fn cmd_count(
    out: &mut String,
    preset: Preset,
    n: u32,
    ty: Option<&str>,
    r: u32,
    list: bool,
    json: bool,
) -> Outcome {
    let family = preset.family(r)?;
    let count = match ty {
        Some(t) => family.count_with_type(n, &parse_type(t)?)?,
        None => family.count(n)?,
    };
    let parts = if list {
        Some(members(&family, n, ty)?)
    } else {
        None
    };
    if json {
        let mut v = json!({ "family": family.name, "n": n, "count": count });
        if let Some(t) = ty {
            v["type"] = json!(parse_type(t)?);
        }
        if let Some(ps) = &parts {
            v["partitions"] = to_json_list(ps);
        }
        print_json(out, &v);
    } else {
        emit!(out, "{count}");
        for p in parts.iter().flatten() {
            emit!(out, "{}", display(p));
        }
    }
    Ok(())
}

fn display(p: &Partition) -> String {
    if p.is_empty() {
        "(empty)".to_string()
    } else {
        p.to_string()
    }
}

/// Forward image under the chain attached to a preset, if any.
fn chain_image(preset: Preset, p: &Partition, r: u32) -> Option<partmaps::Result<ChainTrace>> {
    match preset {
        Preset::B1 => Some(macmahon_forward(p)),
        Preset::B2 => Some(macmahon_inverse(p)),
        Preset::D1 => Some(andrews_forward(p, r)),
        Preset::D2 | Preset::D2Doubled => Some(andrews_inverse(p, r)),
        _ => None,
    }
}

fn cmd_list(
    out: &mut String,
    preset: Preset,
    n: u32,
    ty: Option<&str>,
    r: u32,
    trace: bool,
    json: bool,
) -> Outcome {
    let family = preset.family(r)?;
    let ps = members(&family, n, ty)?;
    if trace && chain_image(preset, &Partition::empty(), r).is_none() {
        return Err(Failure::Usage(format!("{preset} has no chain to trace")));
    }
    let images: Vec<Option<ChainTrace>> = ps
        .iter()
        .map(|p| match chain_image(preset, p, r) {
            Some(t) if trace => t.map(Some),
            _ => Ok(None),
        })
        .collect::<partmaps::Result<_>>()?;
    if json {
        if trace {
            print_json(out, &images);
        } else {
            print_json(out, &to_json_list(&ps));
        }
        return Ok(());
    }
    for (p, image) in ps.iter().zip(&images) {
        match image {
            Some(t) => {
                let other = if t.lambda == *p { &t.tau } else { &t.lambda };
                emit!(out, "{} -> {}", display(p), display(other));
            }
            None => emit!(out, "{}", display(p)),
        }
    }
    Ok(())
}

fn cmd_map(
    out: &mut String,
    direction: Dir,
    chain: Chain,
    text: &str,
    r: u32,
    json: bool,
) -> Outcome {
    let p: Partition = text.parse()?;
    let trace = match (direction, chain) {
        (Dir::Forward, Chain::Macmahon) => macmahon_forward(&p),
        (Dir::Inverse, Chain::Macmahon) => macmahon_inverse(&p),
        (Dir::Forward, Chain::Andrews) => andrews_forward(&p, r),
        (Dir::Inverse, Chain::Andrews) => andrews_inverse(&p, r),
    }?;
    if json {
        print_json(out, &trace);
    } else {
        for (sym, p) in trace.steps() {
            emit!(out, "{sym} = {}", display(p));
        }
    }
    Ok(())
}

fn parse_r_range(text: &str) -> Result<Vec<u32>, Failure> {
    let bad = || Failure::Usage(format!("bad r range {text:?}"));
    let parse = |s: &str| s.trim().parse::<u32>().map_err(|_| bad());
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let v = parse(text)?;
            (v, v)
        }
    };
    if lo == 0 || lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

fn cmd_verify(
    out: &mut String,
    identity: Identity,
    max_n: Option<u32>,
    r: &str,
    exec: Exec,
    json: bool,
) -> Outcome {
    let limit = |default: u32| max_n.unwrap_or(default);
    let rs = parse_r_range(r)?;
    let wanted = |i: Identity| identity == i || identity == Identity::All;
    let mut reports: Vec<VerificationReport> = Vec::new();
    if wanted(Identity::Macmahon) {
        reports.push(verify::verify_macmahon(limit(40), exec)?);
    }
    if wanted(Identity::Refined) {
        reports.push(verify::verify_refined(limit(40), exec)?);
    }
    if wanted(Identity::Companion) {
        reports.push(verify::verify_companion(limit(40), exec)?);
    }
    if wanted(Identity::Andrews) {
        reports.push(verify::verify_andrews(&rs, limit(30), exec)?);
    }
    if wanted(Identity::Phi) {
        reports.push(verify::verify_phi(&[2, 3, 4, 5], limit(25), exec)?);
    }
    if wanted(Identity::Lemmas) {
        reports.push(verify::verify_lemmas(&[3, 5], limit(20), exec)?);
    }
    if wanted(Identity::Colored) {
        let w = limit(20);
        reports.push(verify::verify_colored(w, w.min(12))?);
    }
    if json {
        print_json(out, &reports);
    } else {
        for report in &reports {
            emit!(out, "{report}");
        }
    }
    if reports.iter().all(VerificationReport::passed) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_table(out: &mut String, n: u32, json: bool) -> Outcome {
    if n > table::MAX_TABLE_N {
        return Err(Failure::Usage(format!(
            "table size {n} exceeds {}",
            table::MAX_TABLE_N
        )));
    }
    let rows = table::refinement_rows(n)?;
    if json {
        let v: Vec<_> = rows
            .iter()
            .map(|row| {
                json!({
                    "m1": row.m1,
                    "m2": row.m2,
                    "b1": to_json_list(&row.b1),
                    "b2": to_json_list(&row.b2),
                })
            })
            .collect();
        print_json(out, &v);
    } else {
        out.push_str(&table::render(n, &rows));
    }
    Ok(())
}

fn cmd_series(out: &mut String, product: Product, max_n: u32, r: u32, json: bool) -> Outcome {
    let degree = max_n as usize;
    let series: TruncatedSeries = match product {
        Product::Euler => products::euler(degree),
        Product::Mod6 => products::mod6(degree),
        Product::Refined => products::refined_mod6(degree),
        Product::Companion => products::companion_mod6(degree),
        Product::ThreeColor => products::three_color(degree),
        Product::Colored => products::colored(degree, r),
        Product::Andrews => products::andrews_residues(degree, r),
    }?;
    if json {
        let cells: Vec<_> = series
            .cells()
            .map(|(n, e, v)| json!({ "degree": n, "exponents": e, "value": v }))
            .collect();
        print_json(out, &cells);
        return Ok(());
    }
    emit!(out, "degree\texponents\tvalue");
    for (n, e, v) in series.cells() {
        let e: Vec<String> = e.iter().map(u32::to_string).collect();
        emit!(out, "{n}\t({})\t{v}", e.join(","));
    }
    Ok(())
}
