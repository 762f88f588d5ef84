//! `permpoly`: verify, audit and search permutation polynomial constructions.
//!
//! Exit codes: 0 permutation / clean audit, 1 not a permutation,
//! 2 predicate and oracle disagree, 64 malformed input, 65 hypothesis
//! violation.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use permpoly_core::construct::{find_linear_translators, SubfieldValuedFn, Thm3Variant};
use permpoly_core::families::{
    audit_thm21, audit_thm3, audit_thm41, sample_family, search_h, thm21_example21,
    thm21_generated, thm41_family, DEFAULT_MAX_INSTANCES,
};
use permpoly_core::io::{load_instance, load_tower, write_csv, InstanceError, VerifyReport};
use permpoly_core::oracle::AuditReport;
use permpoly_core::symm::SymmetricKind;
use permpoly_core::{ConstructError, FieldError, FieldTower, TowerSpec};
use serde::Serialize;

const EXIT_NOT_PERMUTATION: u8 = 1;
const EXIT_DISAGREEMENT: u8 = 2;
const EXIT_PARSE: u8 = 64;
const EXIT_HYPOTHESIS: u8 = 65;
const EXIT_IO: u8 = 74;

#[derive(Parser, Debug)]
#[command(
    name = "permpoly",
    version,
    about = "Permutation polynomials over field towers"
)]
struct Cli {
    /// Field specification file (TOML with p, n, m and optional polynomials).
    #[arg(long, global = true)]
    field: Option<PathBuf>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Largest field size accepted.
    #[arg(long, global = true)]
    size_limit: Option<u64>,
    /// Seed for families too large to enumerate.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Include wall-clock timings in reports (makes output run-dependent).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Args, Debug, Clone)]
struct FieldArgs {
    /// Subfield size q (a prime power).
    #[arg(long)]
    q: Option<u32>,
    /// Extension degree m.
    #[arg(long)]
    m: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compare a construction's criterion with exhaustive evaluation.
    Verify { instance: PathBuf },
    /// Run a generated family through predicate and oracle.
    Audit {
        #[arg(value_enum)]
        family: AuditFamily,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        j: Option<u64>,
        #[arg(long, default_value_t = 2)]
        max_deg: u32,
        /// Family of sums: the Dickson-type example or the generated grid.
        #[arg(long, value_enum, default_value_t = Preset::Generated)]
        preset: Preset,
        /// Sample families larger than this.
        #[arg(long, default_value_t = DEFAULT_MAX_INSTANCES)]
        max_instances: usize,
    },
    /// List every h of bounded degree for which x h(λ_j) or x h(μ_j) permutes.
    Search {
        #[arg(value_enum)]
        construction: SearchConstruction,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        j: u64,
        #[arg(long, default_value_t = 2)]
        max_deg: u32,
    },
    /// Write the map of an instance as `input_code,output_code` rows.
    Export { instance: PathBuf },
    /// List the linear translators of tr, lambda:j or mu:j.
    Translators {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value = "tr")]
        f: String,
    },
    /// Show the tower parameters and defining polynomials.
    FieldInfo {
        #[command(flatten)]
        field: FieldArgs,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum AuditFamily {
    Thm21,
    Thm31,
    Thm32,
    Thm41,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Preset {
    Example21,
    Generated,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SearchConstruction {
    Thm31,
    Thm32,
}

impl SearchConstruction {
    fn variant(self) -> Thm3Variant {
        match self {
            SearchConstruction::Thm31 => Thm3Variant::Lambda,
            SearchConstruction::Thm32 => Thm3Variant::Mu,
        }
    }
}

/// A failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }
}

impl From<InstanceError> for Failure {
    fn from(e: InstanceError) -> Self {
        match e {
            InstanceError::Construct(c) => c.into(),
            InstanceError::Io { .. } => Failure {
                code: EXIT_IO,
                message: e.to_string(),
            },
            InstanceError::Parse(_) => Failure::parse(e.to_string()),
        }
    }
}

impl From<ConstructError> for Failure {
    fn from(e: ConstructError) -> Self {
        Failure {
            code: EXIT_HYPOTHESIS,
            message: format!("hypothesis violation: {e}"),
        }
    }
}

impl From<FieldError> for Failure {
    fn from(e: FieldError) -> Self {
        Failure::parse(format!("invalid field: {e}"))
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure {
            code: EXIT_IO,
            message: format!("{e:#}"),
        }
    }
}

struct Ctx {
    field: Option<PathBuf>,
    out: Option<PathBuf>,
    format: Format,
    size_limit: Option<u64>,
    seed: u64,
    timings: bool,
}

impl Ctx {
    fn tower(&self, args: &FieldArgs, default_q: Option<u32>) -> Result<FieldTower, Failure> {
        if let Some(path) = &self.field {
            return Ok(load_tower(path, self.size_limit)?);
        }
        let q = args
            .q
            .or(default_q)
            .ok_or_else(|| Failure::parse("need --field or --q"))?;
        let m = args
            .m
            .ok_or_else(|| Failure::parse("need --field or --m"))?;
        let (p, n) = prime_power(q)
            .ok_or_else(|| Failure::parse(format!("q = {q} is not a prime power")))?;
        let mut spec = TowerSpec::new(p, n, m);
        spec.size_limit = self.size_limit;
        Ok(spec.build()?)
    }

    fn emit(&self, text: &str) -> Result<(), Failure> {
        match &self.out {
            Some(path) => std::fs::write(path, text)
                .with_context(|| format!("cannot write {}", path.display()))?,
            None => std::io::stdout()
                .write_all(text.as_bytes())
                .context("cannot write to stdout")?,
        }
        Ok(())
    }

    fn json<T: Serialize>(&self, value: &T) -> String {
        let mut v = serde_json::to_value(value).expect("reports serialize");
        if !self.timings {
            strip_key(&mut v, "elapsed");
        }
        let mut s = serde_json::to_string_pretty(&v).expect("reports serialize");
        s.push('\n');
        s
    }
}

fn strip_key(v: &mut serde_json::Value, key: &str) {
    match v {
        serde_json::Value::Object(map) => {
            map.remove(key);
            map.values_mut().for_each(|x| strip_key(x, key));
        }
        serde_json::Value::Array(items) => items.iter_mut().for_each(|x| strip_key(x, key)),
        _ => {}
    }
}

/// `q = p^n` with `p` prime.
fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut n) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        n += 1;
    }
    (rest == 1).then_some((p, n))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_PARSE } else { 0 });
        }
    };
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("permpoly: cannot configure workers: {e}");
            return ExitCode::from(EXIT_PARSE);
        }
    }
    let ctx = Ctx {
        field: cli.field,
        out: cli.out,
        format: cli.format,
        size_limit: cli.size_limit,
        seed: cli.seed,
        timings: cli.timings,
    };
    match run(&ctx, cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("permpoly: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(ctx: &Ctx, command: Command) -> Result<u8, Failure> {
    match command {
        Command::Verify { instance } => verify(ctx, instance),
        Command::Audit {
            family,
            field,
            j,
            max_deg,
            preset,
            max_instances,
        } => audit(ctx, family, &field, j, max_deg, preset, max_instances),
        Command::Search {
            construction,
            field,
            j,
            max_deg,
        } => search(ctx, construction, &field, j, max_deg),
        Command::Export { instance } => export(ctx, instance),
        Command::Translators { field, f } => translators(ctx, &field, &f),
        Command::FieldInfo { field } => field_info(ctx, &field),
    }
}

fn verify(ctx: &Ctx, path: PathBuf) -> Result<u8, Failure> {
    let loaded = load_instance(&path, ctx.size_limit)?;
    let report = loaded.verify()?;
    let text = match ctx.format {
        Format::Json => ctx.json(&report),
        Format::Csv => verify_csv(&report),
        Format::Table => verify_table(&report, &loaded.tower),
    };
    ctx.emit(&text)?;
    Ok(if !report.agreement {
        EXIT_DISAGREEMENT
    } else if report.oracle.is_permutation {
        0
    } else {
        EXIT_NOT_PERMUTATION
    })
}

fn verdict(b: bool) -> &'static str {
    if b {
        "permutation"
    } else {
        "not a permutation"
    }
}

fn verify_table(r: &VerifyReport, t: &FieldTower) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "construction  {}", r.construction);
    let _ = writeln!(
        s,
        "field         F_{} (p={}, n={}, m={})",
        r.field_size,
        t.p(),
        t.n(),
        t.m()
    );
    let _ = writeln!(s, "predicate     {}", verdict(r.predicate));
    let _ = writeln!(
        s,
        "oracle        {} (image {} of {})",
        verdict(r.oracle.is_permutation),
        r.oracle.image_size,
        r.oracle.domain_size
    );
    if let Some((x1, x2)) = r.oracle.first_collision {
        let _ = writeln!(s, "collision     F({x1}) = F({x2})");
    }
    if let Some(c) = &r.translator {
        let _ = writeln!(s, "translator    alpha={} a={}", c.alpha, c.a);
    }
    s.push_str(if r.agreement {
        "AGREEMENT\n"
    } else {
        "DISAGREEMENT\n"
    });
    s
}

fn verify_csv(r: &VerifyReport) -> String {
    format!(
        "construction,field_size,predicate,oracle,image_size,agreement\n{},{},{},{},{},{}\n",
        r.construction,
        r.field_size,
        r.predicate,
        r.oracle.is_permutation,
        r.oracle.image_size,
        r.agreement
    )
}

fn audit(
    ctx: &Ctx,
    family: AuditFamily,
    field: &FieldArgs,
    j: Option<u64>,
    max_deg: u32,
    preset: Preset,
    max_instances: usize,
) -> Result<u8, Failure> {
    let need_j = || j.ok_or_else(|| Failure::parse("this family needs --j"));
    let report = match family {
        AuditFamily::Thm31 | AuditFamily::Thm32 => {
            let tower = ctx.tower(field, None)?;
            let variant = if family == AuditFamily::Thm31 {
                Thm3Variant::Lambda
            } else {
                Thm3Variant::Mu
            };
            audit_thm3(&tower, variant, need_j()?, max_deg)?
        }
        AuditFamily::Thm21 => {
            let default_q = (preset == Preset::Example21).then_some(8);
            let tower = ctx.tower(field, default_q)?;
            let (name, instances) = match preset {
                Preset::Example21 => ("thm21 example21".to_string(), thm21_example21(&tower)?),
                Preset::Generated => (
                    format!("thm21 generated q={} m={}", tower.q(), tower.m()),
                    thm21_generated(&tower),
                ),
            };
            let (instances, seed) = sample_family(instances, max_instances, ctx.seed);
            AuditReport {
                seed,
                ..audit_thm21(&tower, &name, &instances)
            }
        }
        AuditFamily::Thm41 => {
            let tower = ctx.tower(field, None)?;
            let (instances, seed) = sample_family(thm41_family(&tower)?, max_instances, ctx.seed);
            let name = format!("thm41 q={} m={} f=tr", tower.q(), tower.m());
            AuditReport {
                seed,
                ..audit_thm41(&tower, &name, &instances)
            }
        }
    };
    let text = match ctx.format {
        Format::Json => ctx.json(&report),
        Format::Csv => audit_csv(&report),
        Format::Table => audit_table(&report),
    };
    ctx.emit(&text)?;
    Ok(if report.is_clean() {
        0
    } else {
        EXIT_DISAGREEMENT
    })
}

fn audit_table(r: &AuditReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "family             {}", r.family);
    let _ = writeln!(s, "instances checked  {}", r.instances_checked);
    let _ = writeln!(s, "agreements         {}", r.agreements);
    let _ = writeln!(s, "disagreements      {}", r.disagreements.len());
    let _ = writeln!(s, "skipped            {}", r.skipped);
    let _ = writeln!(s, "permutations       {}", r.permutations);
    if let Some(seed) = r.seed {
        let _ = writeln!(s, "sampled with seed  {seed}");
    }
    for d in &r.disagreements {
        let _ = writeln!(
            s,
            "  {}: predicate {}, oracle {}",
            d.id,
            verdict(d.predicate),
            verdict(d.oracle)
        );
    }
    s
}

fn audit_csv(r: &AuditReport) -> String {
    let mut s = String::from("id,predicate,oracle\n");
    for d in &r.disagreements {
        let _ = writeln!(s, "{},{},{}", csv_field(&d.id), d.predicate, d.oracle);
    }
    s
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

fn search(
    ctx: &Ctx,
    construction: SearchConstruction,
    field: &FieldArgs,
    j: u64,
    max_deg: u32,
) -> Result<u8, Failure> {
    let tower = ctx.tower(field, None)?;
    let found: Vec<String> = search_h(&tower, construction.variant(), j, max_deg)?
        .iter()
        .map(|h| h.to_string())
        .collect();
    let text = match ctx.format {
        Format::Json => ctx.json(&found),
        Format::Csv => std::iter::once("h".to_string())
            .chain(found.iter().map(|h| csv_field(h)))
            .map(|l| l + "\n")
            .collect(),
        Format::Table => found.iter().map(|h| format!("{h}\n")).collect(),
    };
    ctx.emit(&text)?;
    Ok(0)
}

fn export(ctx: &Ctx, path: PathBuf) -> Result<u8, Failure> {
    let loaded = load_instance(&path, ctx.size_limit)?;
    let rows = loaded.permutation_table()?;
    let text = match ctx.format {
        Format::Json => ctx.json(&rows),
        Format::Csv | Format::Table => {
            let mut buf = Vec::new();
            write_csv(&mut buf, &rows).expect("writing to memory");
            String::from_utf8(buf).expect("ascii")
        }
    };
    ctx.emit(&text)?;
    Ok(0)
}

fn translators(ctx: &Ctx, field: &FieldArgs, f: &str) -> Result<u8, Failure> {
    let tower = ctx.tower(field, None)?;
    let kind: SymmetricKind = f.parse().map_err(|e| Failure::parse(format!("{e}")))?;
    let f = SubfieldValuedFn::from_kind(&tower, kind)?;
    let certs = find_linear_translators(&tower, &f);
    let text = match ctx.format {
        Format::Json => ctx.json(&certs),
        Format::Csv | Format::Table => {
            let mut s = String::from("alpha,a\n");
            for c in &certs {
                let _ = writeln!(s, "{},{}", c.alpha, c.a);
            }
            s
        }
    };
    ctx.emit(&text)?;
    Ok(0)
}

#[derive(Serialize)]
struct FieldInfo {
    p: u32,
    n: u32,
    m: u32,
    q: u32,
    size: u32,
    base_poly: Vec<u32>,
    ext_poly: Vec<u32>,
}

fn field_info(ctx: &Ctx, field: &FieldArgs) -> Result<u8, Failure> {
    let t = ctx.tower(field, None)?;
    let info = FieldInfo {
        p: t.p(),
        n: t.n(),
        m: t.m(),
        q: t.q(),
        size: t.size(),
        base_poly: t.base_poly().to_vec(),
        ext_poly: t.ext_poly().to_vec(),
    };
    let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
    let text = match ctx.format {
        Format::Json => ctx.json(&info),
        Format::Csv => format!(
            "p,n,m,q,size,base_poly,ext_poly\n{},{},{},{},{},{},{}\n",
            info.p,
            info.n,
            info.m,
            info.q,
            info.size,
            join(&info.base_poly),
            join(&info.ext_poly)
        ),
        Format::Table => format!(
            "p          {}\nn          {}\nm          {}\nq          {}\nsize       {}\nbase poly  {}  (coefficients low to high)\next poly   {}  (codes in F_q, low to high)\n",
            info.p,
            info.n,
            info.m,
            info.q,
            info.size,
            join(&info.base_poly),
            join(&info.ext_poly)
        ),
    };
    ctx.emit(&text)?;
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(25), Some((5, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn parses_commands() {
        Cli::try_parse_from([
            "permpoly", "audit", "thm31", "--q", "5", "--m", "2", "--j", "1",
        ])
        .unwrap();
        Cli::try_parse_from([
            "permpoly",
            "translators",
            "--f",
            "tr",
            "--q",
            "4",
            "--m",
            "2",
        ])
        .unwrap();
        assert!(Cli::try_parse_from(["permpoly", "audit", "thm99"]).is_err());
    }
}
