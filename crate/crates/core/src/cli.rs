//! Command-line front end: classification tables, fan export, end-to-end
//! Fano verification, enumeration sweeps, and oracle cross-checks.
//!
//! Exit codes: `0` success, `2` input error, `3` not toric, `4`
//! verification failure, `5` oracle disagreement. All output is
//! deterministic for fixed flags and seed; `NO_COLOR` disables the
//! pass/fail coloring of table output.

use std::collections::BTreeMap;
use std::io::{self, IsTerminal, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use itertools::Itertools;

use crate::classify::{self, ClassificationReport, ClassifyError};
use crate::fan::{
    self, anticanonical_cartier, cartier_json, cone_union_equals, first_fano_violation,
    flag_cone_ray_indices, is_complete_sampled, is_projective_space_fan,
    verify_ray_relations, CartierOutcome, FanError, NotGorensteinReason,
};
use crate::lattice::{Cone, LatticeVector};
use crate::partition::{self, Partition};
use crate::weyl::{coset_classes, lifts_of_v_closed_form, perm_from_word, Permutation, ReducedWord, WeylError};

/// Hard caps keeping every run at desk scale.
const MAX_RANK: usize = 12;
const MAX_DMAX: usize = 6;
const MAX_ORACLE_RANK: usize = 7;
const MAX_ORACLE_D: usize = 4;

const EXIT_INPUT: i32 = 2;
const EXIT_NOT_TORIC: i32 = 3;
const EXIT_VERIFY: i32 = 4;
const EXIT_ORACLE: i32 = 5;

#[derive(Parser)]
#[command(
    name = "schubert-fans",
    version,
    about = "Classify toric Schubert varieties in Grassmannians, export their fans, and verify the Gorenstein Fano family"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one Schubert variety (toric / smooth / Gorenstein)
    Classify(ClassifyArgs),
    /// Export the fan of a toric Schubert variety as JSON
    Fan(FanArgs),
    /// Verify rays, cones, relations, Gorenstein and Fano for w_d, d <= dmax
    #[command(name = "verify-fano")]
    VerifyFano(VerifyFanoArgs),
    /// List Schubert varieties of a Grassmannian with their classification
    Enumerate(EnumerateArgs),
    /// Cross-check fast paths against brute-force oracles
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Space {
    Flag,
    Grassmannian,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Filter {
    All,
    Toric,
    SmoothToric,
    GorensteinToric,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleSubject {
    Bruhat,
    Lifts,
    Cones,
    All,
}

/// Names one Schubert variety: exactly one of `--perm`, `--partition`,
/// `--word` must be given.
#[derive(Args)]
struct VarietyInput {
    /// Ambient rank n of Gr(d, n)
    #[arg(long)]
    n: usize,
    /// Descent position d
    #[arg(long)]
    d: usize,
    /// One-line permutation: digits for n <= 9, comma-separated otherwise
    #[arg(long)]
    perm: Option<String>,
    /// Partition, comma-separated parts; empty string for the empty partition
    #[arg(long)]
    partition: Option<String>,
    /// Word of simple-reflection indices, comma-separated
    #[arg(long)]
    word: Option<String>,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    input: VarietyInput,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Write output to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FanArgs {
    #[command(flatten)]
    input: VarietyInput,
    /// Which fan: the flag variety fan or the merged Grassmannian fan
    #[arg(long, value_enum, default_value = "grassmannian")]
    space: Space,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyFanoArgs {
    /// Verify w_d for every d up to this bound (at most 6)
    #[arg(long)]
    dmax: usize,
    /// Sample count for the completeness check
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    /// Seed for the deterministic sample stream
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Ambient rank n (at most 12)
    #[arg(long)]
    n: usize,
    /// Restrict to one descent position; all of 1..n otherwise
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, value_enum, default_value = "all")]
    filter: Filter,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    /// Which cross-check to run
    #[arg(value_enum)]
    subject: OracleSubject,
    /// Rank for the Bruhat oracle (default 6, at most 7)
    #[arg(long)]
    n: Option<usize>,
    /// Family parameter for the lifts/cones oracles (at most 4)
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<FanError> for Failure {
    fn from(e: FanError) -> Failure {
        let code = match &e {
            FanError::NotToric { .. } => EXIT_NOT_TORIC,
            FanError::Weyl(WeylError::NotDistinctWord) => EXIT_NOT_TORIC,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Failure {
        Failure::input(e.to_string())
    }
}

impl From<WeylError> for Failure {
    fn from(e: WeylError) -> Failure {
        Failure::input(e.to_string())
    }
}

/// Parses arguments from the process environment, runs the command, and
/// returns the exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let (result, out) = match &cli.command {
        Command::Classify(args) => (cmd_classify(args), args.out.clone()),
        Command::Fan(args) => (cmd_fan(args), args.out.clone()),
        Command::VerifyFano(args) => (cmd_verify_fano(args), args.out.clone()),
        Command::Enumerate(args) => (cmd_enumerate(args), args.out.clone()),
        Command::Oracle(args) => (cmd_oracle(args), args.out.clone()),
    };
    match result {
        Ok(text) => match emit(&out, &text) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_INPUT
            }
        },
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

fn color_enabled(out: &Option<PathBuf>) -> bool {
    out.is_none() && std::env::var_os("NO_COLOR").is_none() && io::stdout().is_terminal()
}

fn paint(s: &str, code: &str, enabled: bool) -> String {
    if enabled {
        format!("\x1b[{code}m{s}\x1b[0m")
    } else {
        s.to_string()
    }
}

fn check_rank(n: usize) -> Result<(), Failure> {
    if n < 2 || n > MAX_RANK {
        return Err(Failure::input(format!(
            "rank n must satisfy 2 <= n <= {MAX_RANK}, got {n}"
        )));
    }
    Ok(())
}

fn check_descent(d: usize, n: usize) -> Result<(), Failure> {
    if d < 1 || d >= n {
        return Err(Failure::input(format!(
            "descent d must satisfy 1 <= d < n, got d={d}, n={n}"
        )));
    }
    Ok(())
}

fn parse_word_letters(s: &str) -> Result<Vec<usize>, Failure> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Failure::input(format!("invalid word letter '{t}'")))
        })
        .collect()
}

impl VarietyInput {
    fn validate(&self) -> Result<(), Failure> {
        check_rank(self.n)?;
        check_descent(self.d, self.n)?;
        let given = [&self.perm, &self.partition, &self.word]
            .iter()
            .filter(|o| o.is_some())
            .count();
        if given != 1 {
            return Err(Failure::input(
                "exactly one of --perm, --partition, --word is required",
            ));
        }
        Ok(())
    }

    /// The named permutation, normalized through the partition or word
    /// input when one of those was given.
    fn permutation(&self) -> Result<Permutation, Failure> {
        self.validate()?;
        if let Some(p) = &self.perm {
            let w: Permutation = p
                .parse()
                .map_err(|e: WeylError| Failure::input(e.to_string()))?;
            if w.n() != self.n {
                return Err(Failure::input(format!(
                    "permutation {w} has rank {}, expected n={}",
                    w.n(),
                    self.n
                )));
            }
            Ok(w)
        } else if let Some(ps) = &self.partition {
            let lambda: Partition = ps
                .parse()
                .map_err(|e: partition::PartitionError| Failure::input(e.to_string()))?;
            partition::perm_of(&lambda, self.d, self.n)
                .map_err(|e| Failure::input(e.to_string()))
        } else {
            let letters = parse_word_letters(self.word.as_deref().unwrap_or(""))?;
            Ok(perm_from_word(&letters, self.n)?)
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

const REPORT_CSV_HEADER: &str = "perm,d,n,lambda,toric,smooth,gorenstein,hook_x,hook_y,dim,iso_canonical";

fn report_csv_row(r: &ClassificationReport) -> String {
    let opt = |o: Option<usize>| o.map_or(String::new(), |v| v.to_string());
    [
        csv_field(&r.w.to_string()),
        r.d.to_string(),
        r.n.to_string(),
        csv_field(&r.lambda.to_string()),
        r.is_toric.to_string(),
        r.is_smooth.to_string(),
        r.is_gorenstein.to_string(),
        opt(r.hook.map(|(x, _)| x)),
        opt(r.hook.map(|(_, y)| y)),
        r.dimension.to_string(),
        csv_field(&r.iso_canonical.to_string()),
    ]
    .join(",")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn dash_if_empty(s: String) -> String {
    if s.is_empty() {
        "-".to_string()
    } else {
        s
    }
}

fn cmd_classify(args: &ClassifyArgs) -> Result<String, Failure> {
    let w = args.input.permutation()?;
    let report = classify::classify_report(&w, args.input.d)?;
    let text = match args.format {
        Format::Json => format!("{}\n", report.to_json()),
        Format::Csv => format!("{REPORT_CSV_HEADER}\n{}\n", report_csv_row(&report)),
        Format::Table => {
            let hook = report
                .hook
                .map_or("-".to_string(), |(x, y)| format!("({x},1^{y})"));
            format!(
                "perm={} d={} n={} lambda={} toric={} smooth={} gorenstein={} hook={} dim={} iso_canonical={}\n",
                report.w,
                report.d,
                report.n,
                dash_if_empty(report.lambda.to_string()),
                yes_no(report.is_toric),
                yes_no(report.is_smooth),
                yes_no(report.is_gorenstein),
                hook,
                report.dimension,
                dash_if_empty(report.iso_canonical.to_string()),
            )
        }
    };
    Ok(text)
}

fn cmd_fan(args: &FanArgs) -> Result<String, Failure> {
    let input = &args.input;
    input.validate()?;
    let fan = match args.space {
        Space::Flag => {
            let word = if let Some(ws) = &input.word {
                let letters = parse_word_letters(ws)?;
                ReducedWord::new(letters, input.n).map_err(|e| match e {
                    WeylError::NotReduced => Failure::input("word is not reduced"),
                    other => Failure::input(other.to_string()),
                })?
            } else {
                let w = input.permutation()?;
                canonical_toric_word(&w, input.d, input.n)?
            };
            fan::flag_fan(&word)?
        }
        Space::Grassmannian => {
            let w = input.permutation()?;
            fan::grassmannian_fan(&w, input.d)?
        }
    };
    Ok(format!("{}\n", fan.to_json()))
}

/// The canonical reduced word of a toric Grassmannian permutation; the
/// empty word for the identity. Not Grassmannian or not toric fail with
/// the matching exit codes.
fn canonical_toric_word(w: &Permutation, d: usize, n: usize) -> Result<ReducedWord, Failure> {
    if !w.is_grassmannian(d)? {
        return Err(Failure::input(format!(
            "permutation {w} is not Grassmannian at descent {d}"
        )));
    }
    if !classify::is_toric(w, d)? {
        return Err(Failure {
            code: EXIT_NOT_TORIC,
            message: format!("Schubert variety of {w} in Gr({d},{n}) is not toric"),
        });
    }
    if w.is_identity() {
        return Ok(ReducedWord::new(Vec::new(), n).expect("empty word"));
    }
    let lambda = partition::lambda_of(w, d).expect("Grassmannian checked");
    let (x, y) = lambda.is_hook().expect("toric non-identity");
    Ok(classify::toric_word(x, y, d, n)?)
}

struct VerifyRow {
    d: usize,
    rays: usize,
    rays_expected: usize,
    cones: usize,
    cones_expected: usize,
    relations: Option<bool>,
    gorenstein: bool,
    fano: bool,
    complete: bool,
    cp_ok: usize,
    cp_total: usize,
    cartier_json: String,
    certificate: Option<String>,
}

impl VerifyRow {
    fn pass(&self) -> bool {
        self.rays == self.rays_expected
            && self.cones == self.cones_expected
            && self.relations.unwrap_or(true)
            && self.gorenstein
            && self.fano
            && self.complete
            && self.cp_ok == self.cp_total
    }
}

/// All smooth toric partitions of Gr(d, n): the empty partition, the
/// nonempty rows, and the nonempty columns.
fn smooth_toric_partitions(d: usize, n: usize) -> Vec<Partition> {
    let mut out = vec![Partition::empty()];
    for x in 1..=n - d {
        out.push(Partition::new(vec![x]).unwrap());
    }
    for y in 2..=d {
        out.push(Partition::new(vec![1; y]).unwrap());
    }
    out
}

fn verify_one_d(d: usize, samples: usize, seed: u64) -> Result<VerifyRow, Failure> {
    let fan = fan::wd_fan(d)?;
    let rays_expected = if d == 1 { 2 } else { 2 * d + 1 };
    let cones_expected = d * d + 1;
    let relations = if d >= 2 {
        Some(verify_ray_relations(d)?)
    } else {
        None
    };
    let mut certificate = None;

    let (gorenstein, fano, cartier) = match anticanonical_cartier(&fan)? {
        CartierOutcome::Gorenstein(data) => {
            let violation = first_fano_violation(&fan, &data)?;
            if let Some((cone, ray)) = violation {
                certificate = Some(format!(
                    "fano violation at d={d}: cone {cone} (label {}), ray {} = {}, ⟨m_σ, u_ρ⟩ = {}",
                    fan.labels()[cone],
                    ray,
                    fan.rays()[ray],
                    fan.rays()[ray].dot_rational(&data.per_cone_m[cone]),
                ));
            }
            let fano = violation.is_none();
            let json = cartier_json(true, fano, &data.per_cone_m);
            (true, fano, json)
        }
        CartierOutcome::NotGorenstein { cone, reason } => {
            let why = match reason {
                NotGorensteinReason::Inconsistent => "inconsistent Cartier system".to_string(),
                NotGorensteinReason::NonIntegral(m) => format!("non-integral Cartier data {m}"),
            };
            certificate = Some(format!(
                "not Gorenstein at d={d}: cone {cone} (label {}): {why}",
                fan.labels()[cone]
            ));
            (false, false, cartier_json(false, false, &[]))
        }
    };

    let complete = is_complete_sampled(&fan, samples, seed);
    if !complete && certificate.is_none() {
        certificate = Some(format!("a sampled point escapes every maximal cone at d={d}"));
    }

    // every smooth toric Schubert variety in Gr(d, 2d) is a projective space
    let smooth = smooth_toric_partitions(d, 2 * d);
    let cp_total = smooth.len();
    let mut cp_ok = 0;
    for lambda in &smooth {
        let w = partition::perm_of(lambda, d, 2 * d).expect("fits");
        let f = fan::grassmannian_fan(&w, d)?;
        if is_projective_space_fan(&f) == Some(w.length()) {
            cp_ok += 1;
        } else if certificate.is_none() {
            certificate = Some(format!(
                "smooth toric λ=({lambda}) in Gr({d},{}) is not recognized as a projective space",
                2 * d
            ));
        }
    }

    let row = VerifyRow {
        d,
        rays: fan.rays().len(),
        rays_expected,
        cones: fan.max_cones().len(),
        cones_expected,
        relations,
        gorenstein,
        fano,
        complete,
        cp_ok,
        cp_total,
        cartier_json: cartier,
        certificate,
    };
    if row.certificate.is_none() && !row.pass() {
        // count mismatches have no richer certificate than the row itself
        Ok(VerifyRow {
            certificate: Some(format!(
                "count mismatch at d={d}: rays {}/{}, cones {}/{}",
                row.rays, row.rays_expected, row.cones, row.cones_expected
            )),
            ..row
        })
    } else {
        Ok(row)
    }
}

fn cmd_verify_fano(args: &VerifyFanoArgs) -> Result<String, Failure> {
    if args.dmax < 1 || args.dmax > MAX_DMAX {
        return Err(Failure::input(format!(
            "--dmax must satisfy 1 <= dmax <= {MAX_DMAX}, got {}",
            args.dmax
        )));
    }
    let rows: Vec<VerifyRow> = (1..=args.dmax)
        .map(|d| verify_one_d(d, args.samples, args.seed))
        .collect::<Result<_, _>>()?;
    let all_pass = rows.iter().all(VerifyRow::pass);
    let color = color_enabled(&args.out) && args.format == Format::Table;

    let mut text = String::new();
    match args.format {
        Format::Json => {
            let items: Vec<String> = rows
                .iter()
                .map(|r| {
                    format!(
                        "{{\"d\":{},\"rays\":{},\"cones\":{},\"relations\":{},\"gorenstein\":{},\"fano\":{},\"complete\":{},\"projective_spaces\":{},\"pass\":{},\"cartier\":{}}}",
                        r.d,
                        r.rays,
                        r.cones,
                        r.relations.map_or("null".to_string(), |b| b.to_string()),
                        r.gorenstein,
                        r.fano,
                        r.complete,
                        r.cp_ok,
                        r.pass(),
                        r.cartier_json,
                    )
                })
                .collect();
            text.push_str(&format!("[{}]\n", items.join(",")));
        }
        Format::Csv => {
            text.push_str("d,rays,rays_expected,cones,cones_expected,relations,gorenstein,fano,complete,projective_spaces,projective_spaces_expected,pass\n");
            for r in &rows {
                text.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{},{},{}\n",
                    r.d,
                    r.rays,
                    r.rays_expected,
                    r.cones,
                    r.cones_expected,
                    r.relations.map_or(String::new(), |b| b.to_string()),
                    r.gorenstein,
                    r.fano,
                    r.complete,
                    r.cp_ok,
                    r.cp_total,
                    r.pass()
                ));
            }
        }
        Format::Table => {
            for r in &rows {
                let verdict = if r.pass() {
                    paint("PASS", "32", color)
                } else {
                    paint("FAIL", "31", color)
                };
                text.push_str(&format!(
                    "d={}  rays={}/{}  cones={}/{}  relations={}  gorenstein={}  fano={}  complete={}  cp-fans={}/{}  {}\n",
                    r.d,
                    r.rays,
                    r.rays_expected,
                    r.cones,
                    r.cones_expected,
                    r.relations.map_or("-", yes_no),
                    yes_no(r.gorenstein),
                    yes_no(r.fano),
                    yes_no(r.complete),
                    r.cp_ok,
                    r.cp_total,
                    verdict,
                ));
            }
            let summary = if all_pass {
                paint("all checks passed", "32", color)
            } else {
                paint("verification failed", "31", color)
            };
            text.push_str(&format!("{summary}\n"));
        }
    }

    if all_pass {
        Ok(text)
    } else {
        for r in &rows {
            if let Some(cert) = &r.certificate {
                text.push_str(&format!("certificate: {cert}\n"));
            }
        }
        // the table itself is the verdict; print it before failing
        print!("{text}");
        Err(Failure {
            code: EXIT_VERIFY,
            message: "verify-fano found a failing check".into(),
        })
    }
}

/// All Grassmannian permutations of Gr(d, n), ordered by partition.
fn grassmannian_perms(d: usize, n: usize) -> Vec<Permutation> {
    let mut perms: Vec<Permutation> = (1..=n)
        .combinations(d)
        .map(|first| {
            let mut v = first.clone();
            v.extend((1..=n).filter(|x| !first.contains(x)));
            Permutation::from_one_line(v).expect("bijection")
        })
        .collect();
    perms.sort_by_key(|w| partition::lambda_of(w, d).expect("Grassmannian"));
    perms
}

fn cmd_enumerate(args: &EnumerateArgs) -> Result<String, Failure> {
    check_rank(args.n)?;
    if let Some(d) = args.d {
        check_descent(d, args.n)?;
    }
    let ds: Vec<usize> = match args.d {
        Some(d) => vec![d],
        None => (1..args.n).collect(),
    };
    let mut reports: Vec<ClassificationReport> = Vec::new();
    for &d in &ds {
        for w in grassmannian_perms(d, args.n) {
            let r = classify::classify_report(&w, d)?;
            let keep = match args.filter {
                Filter::All => true,
                Filter::Toric => r.is_toric,
                Filter::SmoothToric => r.is_toric && r.is_smooth,
                Filter::GorensteinToric => r.is_toric && r.is_gorenstein,
            };
            if keep {
                reports.push(r);
            }
        }
    }

    let mut text = String::new();
    match args.format {
        Format::Json => {
            let items: Vec<String> = reports.iter().map(ClassificationReport::to_json).collect();
            text.push_str(&format!("[{}]\n", items.join(",")));
        }
        Format::Csv => {
            text.push_str(REPORT_CSV_HEADER);
            text.push('\n');
            for r in &reports {
                text.push_str(&report_csv_row(r));
                text.push('\n');
            }
        }
        Format::Table => {
            let header = [
                "perm",
                "d",
                "lambda",
                "toric",
                "smooth",
                "gorenstein",
                "dim",
                "iso_canonical",
            ];
            let rows: Vec<[String; 8]> = reports
                .iter()
                .map(|r| {
                    [
                        r.w.to_string(),
                        r.d.to_string(),
                        dash_if_empty(r.lambda.to_string()),
                        yes_no(r.is_toric).to_string(),
                        yes_no(r.is_smooth).to_string(),
                        yes_no(r.is_gorenstein).to_string(),
                        r.dimension.to_string(),
                        dash_if_empty(r.iso_canonical.to_string()),
                    ]
                })
                .collect();
            let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
            for row in &rows {
                for (i, cell) in row.iter().enumerate() {
                    widths[i] = widths[i].max(cell.len());
                }
            }
            let fmt_row = |cells: &[String]| -> String {
                cells
                    .iter()
                    .enumerate()
                    .map(|(i, c)| format!("{:<w$}", c, w = widths[i]))
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            let header_cells: Vec<String> = header.iter().map(|s| s.to_string()).collect();
            text.push_str(&fmt_row(&header_cells));
            text.push('\n');
            for row in &rows {
                text.push_str(&fmt_row(row));
                text.push('\n');
            }
            text.push_str(&format!("{} rows\n", rows.len()));
        }
    }
    Ok(text)
}

fn oracle_bruhat(n: usize) -> Result<String, Failure> {
    if !(2..=MAX_ORACLE_RANK).contains(&n) {
        return Err(Failure::input(format!(
            "bruhat oracle rank must satisfy 2 <= n <= {MAX_ORACLE_RANK}"
        )));
    }
    let perms: Vec<Permutation> = (1..=n)
        .permutations(n)
        .map(|v| Permutation::from_one_line(v).expect("bijection"))
        .collect();
    let mut compared = 0usize;
    for w in &perms {
        let below: std::collections::BTreeSet<Permutation> =
            w.reduced_word().subwords().map(|(_, p)| p).collect();
        for u in &perms {
            compared += 1;
            let fast = u.bruhat_leq(w);
            let slow = below.contains(u);
            if fast != slow {
                return Err(Failure {
                    code: EXIT_ORACLE,
                    message: format!(
                        "bruhat disagreement at u={u}, w={w}: sorted-prefix says {fast}, subword oracle says {slow}"
                    ),
                });
            }
        }
    }
    Ok(format!(
        "bruhat: {compared} ordered pairs compared in S_{n}; sorted-prefix criterion agrees with the subword oracle\n"
    ))
}

fn oracle_lifts(d: usize) -> Result<String, Failure> {
    if !(1..=MAX_ORACLE_D).contains(&d) {
        return Err(Failure::input(format!(
            "lifts oracle parameter must satisfy 1 <= d <= {MAX_ORACLE_D}"
        )));
    }
    let word = classify::wd_word(d)?;
    let classes = coset_classes(&word, d)?;
    let mut expected: BTreeMap<Permutation, Vec<Vec<usize>>> = BTreeMap::new();
    for a in 0..d {
        for b in 0..d {
            let hook = hook_partition(d - a, d - b - 1);
            let v = partition::perm_of(&hook, d, 2 * d).expect("hook fits");
            expected.insert(v, lifts_of_v_closed_form(d, a, b)?);
        }
    }
    expected.insert(Permutation::identity(2 * d), lifts_of_v_closed_form(d, 0, d)?);

    if classes.len() != expected.len() {
        return Err(Failure {
            code: EXIT_ORACLE,
            message: format!(
                "lifts disagreement at d={d}: {} brute-force classes vs {} closed-form classes",
                classes.len(),
                expected.len()
            ),
        });
    }
    let mut total = 0usize;
    for class in &classes {
        let want = expected.get(&class.representative).ok_or_else(|| Failure {
            code: EXIT_ORACLE,
            message: format!(
                "lifts disagreement at d={d}: class representative {} missing from the closed form",
                class.representative
            ),
        })?;
        if &class.members != want {
            return Err(Failure {
                code: EXIT_ORACLE,
                message: format!(
                    "lifts disagreement at d={d}, v={}: {:?} vs closed form {:?}",
                    class.representative, class.members, want
                ),
            });
        }
        total += class.members.len();
    }
    if total != 1 << (2 * d - 1) {
        return Err(Failure {
            code: EXIT_ORACLE,
            message: format!(
                "lifts disagreement at d={d}: class sizes sum to {total}, expected {}",
                1 << (2 * d - 1)
            ),
        });
    }
    Ok(format!(
        "lifts: d={d}: {} classes match the closed form set-for-set; sizes sum to {total} = 2^{}\n",
        classes.len(),
        2 * d - 1
    ))
}

fn hook_partition(x: usize, y: usize) -> Partition {
    let mut parts = vec![x];
    parts.extend(std::iter::repeat(1).take(y));
    Partition::new(parts).expect("hook parts decrease")
}

fn oracle_cones(d: usize) -> Result<String, Failure> {
    if !(1..=MAX_ORACLE_D).contains(&d) {
        return Err(Failure::input(format!(
            "cones oracle parameter must satisfy 1 <= d <= {MAX_ORACLE_D}"
        )));
    }
    let word = classify::wd_word(d)?;
    let classes = coset_classes(&word, d)?;
    let flag = fan::flag_fan(&word)?;
    let merged_fan = fan::wd_fan(d)?;
    let m = 2 * d - 1;
    let mut pieces_total = 0usize;
    for class in &classes {
        let idx = merged_fan
            .labels()
            .iter()
            .position(|l| l == &class.representative)
            .expect("merged fan has one cone per class");
        let merged = merged_fan.cone(idx)?;
        let pieces: Vec<Cone> = class
            .members
            .iter()
            .map(|j| {
                let gens: Vec<LatticeVector> = flag_cone_ray_indices(m, j)
                    .into_iter()
                    .map(|k| flag.rays()[k].clone())
                    .collect();
                Cone::from_generators(&gens, m).map_err(FanError::from)
            })
            .collect::<Result<_, _>>()?;
        if !cone_union_equals(&merged, &pieces)? {
            return Err(Failure {
                code: EXIT_ORACLE,
                message: format!(
                    "cone merge disagreement at d={d}, v={}: the {} flag pieces do not tile the merged cone",
                    class.representative,
                    pieces.len()
                ),
            });
        }
        pieces_total += pieces.len();
    }
    Ok(format!(
        "cones: d={d}: {} merged cones tile exactly into {pieces_total} unimodular flag cones (C_e uses 2^{} = {})\n",
        classes.len(),
        2 * d - 2,
        1usize << (2 * d - 2),
    ))
}

fn cmd_oracle(args: &OracleArgs) -> Result<String, Failure> {
    let mut text = String::new();
    match args.subject {
        OracleSubject::Bruhat => text.push_str(&oracle_bruhat(args.n.unwrap_or(6))?),
        OracleSubject::Lifts => text.push_str(&oracle_lifts(args.d.unwrap_or(3))?),
        OracleSubject::Cones => text.push_str(&oracle_cones(args.d.unwrap_or(2))?),
        OracleSubject::All => {
            text.push_str(&oracle_bruhat(args.n.unwrap_or(6))?);
            text.push_str(&oracle_lifts(args.d.unwrap_or(3))?);
            text.push_str(&oracle_cones(args.d.unwrap_or(2))?);
        }
    }
    text.push_str("all oracle comparisons agree\n");
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classify_args(n: usize, d: usize, perm: Option<&str>, partition: Option<&str>) -> ClassifyArgs {
        ClassifyArgs {
            input: VarietyInput {
                n,
                d,
                perm: perm.map(String::from),
                partition: partition.map(String::from),
                word: None,
            },
            format: Format::Table,
            out: None,
        }
    }

    #[test]
    fn classify_table_line() {
        let out = cmd_classify(&classify_args(4, 2, Some("2413"), None)).unwrap();
        assert!(out.contains("toric=yes"));
        assert!(out.contains("smooth=no"));
        assert!(out.contains("gorenstein=yes"));
        assert!(out.contains("dim=3"));
    }

    #[test]
    fn classify_rejects_non_grassmannian() {
        let err = cmd_classify(&classify_args(4, 2, Some("2143"), None)).unwrap_err();
        assert_eq!(err.code, EXIT_INPUT);
        assert!(err.message.contains("not Grassmannian"));
    }

    #[test]
    fn classify_by_partition() {
        let out = cmd_classify(&classify_args(4, 2, None, Some("2,2"))).unwrap();
        assert!(out.contains("toric=no"));
        assert!(out.contains("smooth=yes"));
    }

    #[test]
    fn input_exclusivity() {
        let args = classify_args(4, 2, Some("2413"), Some("2,1"));
        assert_eq!(cmd_classify(&args).unwrap_err().code, EXIT_INPUT);
        let none = classify_args(4, 2, None, None);
        assert_eq!(cmd_classify(&none).unwrap_err().code, EXIT_INPUT);
    }

    #[test]
    fn fan_not_toric_exit_code() {
        let args = FanArgs {
            input: VarietyInput {
                n: 4,
                d: 2,
                perm: None,
                partition: Some("2,2".into()),
                word: None,
            },
            space: Space::Grassmannian,
            out: None,
        };
        assert_eq!(cmd_fan(&args).unwrap_err().code, EXIT_NOT_TORIC);
    }

    #[test]
    fn fan_flag_word_matches_library() {
        let args = FanArgs {
            input: VarietyInput {
                n: 4,
                d: 2,
                perm: None,
                partition: None,
                word: Some("1,3,2".into()),
            },
            space: Space::Flag,
            out: None,
        };
        let out = cmd_fan(&args).unwrap();
        let word = ReducedWord::new(vec![1, 3, 2], 4).unwrap();
        assert_eq!(out, format!("{}\n", fan::flag_fan(&word).unwrap().to_json()));
    }

    #[test]
    fn enumerate_gr24_counts() {
        let args = EnumerateArgs {
            n: 4,
            d: Some(2),
            filter: Filter::All,
            format: Format::Csv,
            out: None,
        };
        let out = cmd_enumerate(&args).unwrap();
        assert_eq!(out.lines().count(), 7); // header + six varieties
        let toric = EnumerateArgs {
            n: 4,
            d: Some(2),
            filter: Filter::Toric,
            format: Format::Csv,
            out: None,
        };
        assert_eq!(cmd_enumerate(&toric).unwrap().lines().count(), 6);
    }

    #[test]
    fn verify_fano_small() {
        let args = VerifyFanoArgs {
            dmax: 2,
            samples: 500,
            seed: 42,
            format: Format::Table,
            out: None,
        };
        let out = cmd_verify_fano(&args).unwrap();
        assert!(out.contains("d=1"));
        assert!(out.contains("d=2  rays=5/5  cones=5/5"));
        assert!(out.contains("all checks passed"));
    }

    #[test]
    fn oracle_defaults_agree() {
        assert!(oracle_bruhat(4).unwrap().contains("agrees"));
        assert!(oracle_lifts(2).unwrap().contains("match"));
        assert!(oracle_cones(2).unwrap().contains("tile exactly"));
    }
}
