//! Subcommands of `gk`. Each returns its standard output, diagnostics and
//! exit code instead of printing, so tests can drive them directly.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use garside::bounded::{build_garside_map, garside_map_for_delta, Boundedness, GarsideMap};
use garside::catalog::{self, CatalogEntry};
use garside::conjugacy::{are_conjugate_words, sliding_circuit_set};
use garside::garside::{
    is_garside_family, normalize, smallest_garside_family, symmetric_normalize, FamilyVerdict,
    GarsideFamily,
};
use garside::germ::{
    germ_category, germ_context_with, is_garside_germ, validate_germ, Germ, GermValidity,
    GermVerdict,
};
use garside::reversing::{self, CubeVerdict, ReverseOutcome};
use garside::word::mirror_word;
use garside::{CategoryContext, Error, Limits, Presentation, SignedWord, Word};
use thiserror::Error as ThisError;

use crate::format::{
    emit_germ, emit_structure, is_germ_file, parse_germ, parse_structure, FormatError, GarsideSpec,
    StructureFile,
};

#[derive(Debug, Parser)]
#[command(
    name = "gk",
    version,
    about = "Garside calculus on presented monoids, categories and germs"
)]
pub struct Cli {
    #[command(flatten)]
    pub limits: LimitArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    /// Reversing fuel is FACTOR·L² cells for input length L.
    #[arg(long = "limit-fuel-factor", global = true, default_value_t = 16)]
    pub fuel_factor: usize,
    /// Extra relation applications allowed by the closure fallback.
    #[arg(long = "limit-closure-depth", global = true, default_value_t = 8)]
    pub closure_depth: usize,
    #[arg(long = "limit-closure-nodes", global = true, default_value_t = 200_000)]
    pub closure_nodes: usize,
    #[arg(long = "limit-cube-depth", global = true, default_value_t = 1)]
    pub cube_depth: usize,
    /// Node budget for conjugacy searches.
    #[arg(long = "limit-nodes", global = true, default_value_t = 100_000)]
    pub nodes: usize,
    /// Bound on divisor enumeration when building Garside maps.
    #[arg(long = "limit-divisors", global = true, default_value_t = 10_000)]
    pub divisors: usize,
}

impl LimitArgs {
    pub fn limits(&self) -> Limits {
        Limits {
            fuel_factor: self.fuel_factor,
            closure_extra_depth: self.closure_depth,
            closure_node_budget: self.closure_nodes,
            cube_depth: self.cube_depth,
            node_budget: self.nodes,
            divisor_budget: self.divisors,
            ..Limits::default()
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the structural checks and print one PASS/FAIL/N/A line each.
    Check { file: PathBuf },
    /// Greedy normal form, or Δ-normal form with --delta.
    Nf {
        file: PathBuf,
        #[arg(short = 'w', long = "word")]
        word: String,
        #[arg(long)]
        delta: bool,
    },
    /// Decide equality of two words.
    Eq {
        file: PathBuf,
        #[arg(short = 'w', long = "word", num_args = 1, required = true)]
        words: Vec<String>,
    },
    /// Least common right multiple (left with --left).
    Lcm {
        file: PathBuf,
        #[arg(short = 'w', long = "word", num_args = 1, required = true)]
        words: Vec<String>,
        #[arg(long)]
        left: bool,
    },
    /// Greatest common left divisor.
    Gcd {
        file: PathBuf,
        #[arg(short = 'w', long = "word", num_args = 1, required = true)]
        words: Vec<String>,
    },
    /// Right-reverse a signed word to `pos | neg`.
    Reverse {
        file: PathBuf,
        #[arg(short = 'w', long = "word")]
        word: String,
    },
    /// Decide conjugacy and print a witness.
    Conj {
        file: PathBuf,
        #[arg(short = 'w', long = "word", num_args = 1, required = true)]
        words: Vec<String>,
    },
    /// List the sliding circuit set of an element.
    Sss {
        file: PathBuf,
        #[arg(short = 'w', long = "word")]
        word: String,
    },
    /// Show a built-in structure, or write it as a file with --emit.
    Catalog {
        key: Option<String>,
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Emit the germ of simples instead of the presentation.
        #[arg(long)]
        germ: bool,
    },
}

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Format { path: String, source: FormatError },
    #[error("{0}")]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: 0,
        }
    }

    fn failure(e: &CliError) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: 2,
        }
    }
}

/// Parses arguments (without the program name handling) and runs.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: 2,
                }
            } else {
                Outcome::ok(text)
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let limits = cli.limits.limits();
    let result = match &cli.command {
        Command::Check { file } => check(file, limits),
        Command::Nf { file, word, delta } => nf(file, limits, word, *delta),
        Command::Eq { file, words } => eq(file, limits, words),
        Command::Lcm { file, words, left } => lcm(file, limits, words, *left),
        Command::Gcd { file, words } => gcd(file, limits, words),
        Command::Reverse { file, word } => reverse(file, limits, word),
        Command::Conj { file, words } => conj(file, limits, words),
        Command::Sss { file, word } => sss(file, limits, word),
        Command::Catalog { key, emit, germ } => catalog_cmd(key.as_deref(), emit.as_deref(), *germ),
    };
    result.unwrap_or_else(|e| Outcome::failure(&e))
}

/// A loaded file: the context plus whatever Garside data could be built.
pub struct Loaded {
    pub ctx: CategoryContext,
    pub spec: Option<GarsideSpec>,
    pub family: Option<GarsideFamily>,
    pub map: Option<GarsideMap>,
    pub germ: Option<Germ>,
    /// Why no Garside map is available, when one was asked for.
    pub problem: Option<String>,
}

pub fn load(path: &Path, limits: Limits) -> Result<Loaded, CliError> {
    let shown = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: shown.clone(),
        source,
    })?;
    let format_err = |source| CliError::Format {
        path: shown.clone(),
        source,
    };
    if is_germ_file(&text) {
        let germ = parse_germ(&text).map_err(format_err)?;
        return Ok(load_germ(germ, limits));
    }
    let file = parse_structure(&text).map_err(format_err)?;
    let ctx = CategoryContext::with_limits(file.presentation.clone(), limits);
    let mut loaded = Loaded {
        ctx,
        spec: file.garside.clone(),
        family: None,
        map: None,
        germ: None,
        problem: None,
    };
    if let Some(spec) = &file.garside {
        if let Err(e) = attach_garside(&mut loaded, spec) {
            loaded.problem = Some(e.to_string());
        }
    }
    Ok(loaded)
}

fn attach_garside(l: &mut Loaded, spec: &GarsideSpec) -> Result<(), Error> {
    let ctx = &l.ctx;
    let outcome = match spec {
        GarsideSpec::Family(words) => {
            let family = GarsideFamily::new(ctx, words)?;
            let b = build_garside_map(ctx, &family)?;
            l.family = Some(family);
            b
        }
        GarsideSpec::Delta(deltas) => garside_map_for_delta(ctx, deltas)?,
        GarsideSpec::Auto => {
            let family = smallest_garside_family(ctx, ctx.limits().divisor_budget)?;
            let b = build_garside_map(ctx, &family)?;
            l.family = Some(family);
            b
        }
    };
    match outcome {
        Boundedness::Bounded(m) => {
            if l.family.is_none() {
                l.family = Some(m.family());
            }
            l.map = Some(*m);
        }
        Boundedness::Unbounded(c) => l.problem = Some(format!("no Garside map: {c}")),
    }
    Ok(())
}

fn load_germ(germ: Germ, limits: Limits) -> Loaded {
    match catalog::from_garside_germ("file", &germ) {
        Ok(entry) => {
            let ctx = CategoryContext::with_limits(entry.context.presentation().clone(), limits);
            Loaded {
                ctx,
                spec: None,
                family: entry.family,
                map: entry.map,
                germ: Some(germ),
                problem: None,
            }
        }
        Err(e) => {
            let ctx = germ_context_with(&germ, limits)
                .unwrap_or_else(|_| CategoryContext::with_limits(germ_category(&germ), limits));
            Loaded {
                ctx,
                spec: None,
                family: None,
                map: None,
                germ: Some(germ),
                problem: Some(e.to_string()),
            }
        }
    }
}

fn need_map(l: &Loaded) -> Result<&GarsideMap, CliError> {
    l.map.as_ref().ok_or_else(|| {
        CliError::Usage(match &l.problem {
            Some(p) => p.clone(),
            None => "no Garside map; add a [garside] section".into(),
        })
    })
}

fn parse_signed(ctx: &CategoryContext, text: &str) -> Result<SignedWord, CliError> {
    Ok(ctx.presentation().parse_signed_word(text)?)
}

fn parse_positive(ctx: &CategoryContext, text: &str) -> Result<Word, CliError> {
    Ok(ctx.presentation().parse_word(text)?)
}

fn two(words: &[String]) -> Result<(&str, &str), CliError> {
    match words {
        [a, b] => Ok((a, b)),
        _ => Err(CliError::Usage(format!(
            "expected two words (-w W1 -w W2), got {}",
            words.len()
        ))),
    }
}

fn positive_part(w: &SignedWord) -> Option<Vec<usize>> {
    w.is_positive()
        .then(|| w.letters.iter().map(|&(g, _)| g).collect())
}

/// Prints `w` canonically when the context allows it.
fn show(ctx: &CategoryContext, w: &Word) -> Result<String, CliError> {
    let w = if ctx.is_noetherian() {
        ctx.canonical(w)?
    } else {
        w.clone()
    };
    Ok(ctx.presentation().display_word(&w))
}

fn check(file: &Path, limits: Limits) -> Result<Outcome, CliError> {
    let l = load(file, limits)?;
    let mut lines: Vec<(&str, &str, String)> = Vec::new();
    if let Some(g) = &l.germ {
        match validate_germ(g) {
            GermValidity::Valid => {
                lines.push(("PASS", "germ-valid", String::new()));
                match is_garside_germ(g).verdict {
                    GermVerdict::Garside => lines.push(("PASS", "garside-germ", String::new())),
                    GermVerdict::NotGarside(why) => lines.push(("FAIL", "garside-germ", why)),
                }
            }
            GermValidity::Violation(v) => {
                lines.push(("FAIL", "germ-valid", v.describe(g)));
                lines.push(("N/A", "garside-germ", "invalid germ".into()));
            }
        }
    }
    let ctx = &l.ctx;
    let p = ctx.presentation();
    let triple = |u: &[usize], v: &[usize], w: &[usize]| {
        format!(
            "{}, {}, {}",
            p.display_compact(u),
            p.display_compact(v),
            p.display_compact(w)
        )
    };
    match ctx.cube_verdict() {
        None => lines.push((
            "N/A",
            "cube-condition",
            "presentation is not complemented".into(),
        )),
        Some(CubeVerdict::Complete) => lines.push(("PASS", "cube-condition", String::new())),
        Some(CubeVerdict::CounterExample(u, v, w)) => {
            lines.push(("FAIL", "cube-condition", triple(u, v, w)))
        }
        Some(CubeVerdict::Inconclusive(u, v, w)) => lines.push((
            "N/A",
            "cube-condition",
            format!("reversing ran out of fuel on {}", triple(u, v, w)),
        )),
    }
    if ctx.is_noetherian() {
        lines.push(("PASS", "noetherian", String::new()));
    } else {
        lines.push(("N/A", "noetherian", "no additive length found".into()));
    }
    match &l.family {
        None if l.spec.is_none() && l.germ.is_none() => {
            lines.push(("N/A", "garside-family", "no [garside] section".into()))
        }
        None => lines.push((
            "N/A",
            "garside-family",
            l.problem.clone().unwrap_or_default(),
        )),
        Some(f) => match is_garside_family(ctx, f) {
            Ok(FamilyVerdict::Yes) => {
                lines.push(("PASS", "garside-family", format!("{} elements", f.len())))
            }
            Ok(FamilyVerdict::No(why)) => {
                lines.push(("FAIL", "garside-family", describe_failure(ctx, &why)))
            }
            Err(e) => lines.push(("N/A", "garside-family", e.to_string())),
        },
    }
    match (&l.map, &l.problem) {
        (Some(m), _) => {
            let d = m.delta(garside::ObjectId(0));
            lines.push((
                "PASS",
                "garside-map",
                format!(
                    "delta {}, {} simples",
                    p.display_word(m.word(d)),
                    m.simple_count()
                ),
            ))
        }
        (None, Some(why)) => lines.push(("FAIL", "garside-map", why.clone())),
        (None, None) => lines.push(("N/A", "garside-map", "no [garside] section".into())),
    }
    let mut out = String::new();
    let mut failed = false;
    for (status, name, detail) in lines {
        failed |= status == "FAIL";
        if detail.is_empty() {
            out.push_str(&format!("{status} {name}\n"));
        } else {
            out.push_str(&format!("{status} {name}: {detail}\n"));
        }
    }
    Ok(Outcome {
        stdout: out,
        stderr: String::new(),
        code: i32::from(failed),
    })
}

fn describe_failure(ctx: &CategoryContext, f: &garside::garside::FamilyFailure) -> String {
    use garside::garside::FamilyFailure::*;
    let p = ctx.presentation();
    match f {
        DoesNotGenerate(a) => format!("atom {} is missing", p.display_word(a)),
        NotLcmClosed { s, t, lcm } => {
            format!(
                "lcm of {} and {} is {}, not in the family",
                p.display_word(s),
                p.display_word(t),
                p.display_word(lcm)
            )
        }
        NotRightDivisorClosed { element, divisor } => {
            format!(
                "right divisor {} of {} is not in the family",
                p.display_word(divisor),
                p.display_word(element)
            )
        }
    }
}

fn nf(file: &Path, limits: Limits, word: &str, delta: bool) -> Result<Outcome, CliError> {
    let l = load(file, limits)?;
    let ctx = &l.ctx;
    let w = parse_signed(ctx, word)?;
    if delta {
        let m = need_map(&l)?;
        return Ok(Outcome::ok(format!(
            "{}\n",
            m.display(&m.delta_normalize(&w)?)
        )));
    }
    if let Some(m) = &l.map {
        if w.is_positive() {
            return Ok(Outcome::ok(format!(
                "{}\n",
                m.display_greedy(&m.delta_normalize(&w)?)
            )));
        }
    }
    let family = l.family.as_ref().ok_or_else(|| {
        CliError::Usage(
            l.problem
                .clone()
                .unwrap_or("no Garside family; add a [garside] section".into()),
        )
    })?;
    if let Some(letters) = positive_part(&w) {
        let pw = ctx.presentation().word_from(w.source, &letters)?;
        return Ok(Outcome::ok(format!(
            "{}\n",
            normalize(ctx, family, &pw)?.display(ctx, family)
        )));
    }
    let sn = symmetric_normalize(ctx, family, &w)?;
    let pos = sn.positive.display(ctx, family);
    let text = match (sn.negative.is_empty(), sn.positive.is_empty()) {
        (true, _) => pos,
        (false, true) => format!("({})^-1", sn.negative.display(ctx, family)),
        (false, false) => format!("({})^-1 . {pos}", sn.negative.display(ctx, family)),
    };
    Ok(Outcome::ok(format!("{text}\n")))
}

fn verdict(equal: bool, yes: &str, no: &str) -> Outcome {
    Outcome {
        stdout: format!("{}\n", if equal { yes } else { no }),
        stderr: String::new(),
        code: if equal { 0 } else { 1 },
    }
}

fn eq(file: &Path, limits: Limits, words: &[String]) -> Result<Outcome, CliError> {
    let (a, b) = two(words)?;
    let l = load(file, limits)?;
    let ctx = &l.ctx;
    let (u, v) = (parse_signed(ctx, a)?, parse_signed(ctx, b)?);
    if let Some(m) = &l.map {
        return Ok(verdict(
            m.delta_normalize(&u)? == m.delta_normalize(&v)?,
            "equal",
            "distinct",
        ));
    }
    let equal = match (positive_part(&u), positive_part(&v)) {
        (Some(x), Some(y)) => {
            let p = ctx.presentation();
            let (x, y) = (p.word_from(u.source, &x)?, p.word_from(v.source, &y)?);
            x.source == y.source && x.target == y.target && ctx.equal(&x, &y)?
        }
        _ => ctx.groupoid_equal(&u, &v)?,
    };
    Ok(verdict(equal, "equal", "distinct"))
}

fn lcm(file: &Path, limits: Limits, words: &[String], left: bool) -> Result<Outcome, CliError> {
    let (a, b) = two(words)?;
    let l = load(file, limits)?;
    let ctx = &l.ctx;
    let (u, v) = (parse_positive(ctx, a)?, parse_positive(ctx, b)?);
    let result = match (&l.map, left) {
        (Some(m), false) => Ok(m.right_lcm(&u, &v)?),
        (Some(m), true) => Ok(m.left_lcm(&u, &v)?),
        (None, false) => reversing::right_lcm(ctx, &u, &v),
        (None, true) => {
            let mirror = CategoryContext::with_limits(ctx.presentation().mirror(), *ctx.limits());
            reversing::right_lcm(&mirror, &mirror_word(&u), &mirror_word(&v))
                .map(|w| mirror_word(&w))
        }
    };
    match result {
        Ok(w) => Ok(Outcome::ok(format!("{}\n", show(ctx, &w)?))),
        Err(Error::NoCommonMultiple) => Ok(Outcome::ok("none\n".into())),
        Err(e) => Err(e.into()),
    }
}

fn gcd(file: &Path, limits: Limits, words: &[String]) -> Result<Outcome, CliError> {
    let (a, b) = two(words)?;
    let l = load(file, limits)?;
    let ctx = &l.ctx;
    let (u, v) = (parse_positive(ctx, a)?, parse_positive(ctx, b)?);
    if let Some(m) = &l.map {
        return Ok(Outcome::ok(format!("{}\n", show(ctx, &m.gcd(&u, &v)?)?)));
    }
    // Without a Garside map: the heaviest common divisor, if it is greatest.
    let common: Vec<Word> = ctx
        .left_divisors(&u, ctx.limits().divisor_budget)?
        .into_iter()
        .map(|d| ctx.left_divides(&d, &v).map(|b| b.then_some(d)))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    let best = common
        .iter()
        .max_by_key(|d| ctx.weight(d).unwrap_or(d.len() as u64))
        .expect("identity divides");
    for d in &common {
        if !ctx.left_divides(d, best)? {
            return Ok(Outcome::ok("none\n".into()));
        }
    }
    Ok(Outcome::ok(format!("{}\n", show(ctx, best)?)))
}

fn reverse(file: &Path, limits: Limits, word: &str) -> Result<Outcome, CliError> {
    let l = load(file, limits)?;
    let ctx = &l.ctx;
    let p = ctx.presentation();
    let w = parse_signed(ctx, word)?;
    let comp = ctx
        .complement()
        .ok_or_else(|| CliError::Usage("the presentation is not complemented".into()))?;
    let fuel = reversing::default_fuel(w.len(), ctx.limits().fuel_factor);
    match reversing::reverse(comp, &w, fuel) {
        ReverseOutcome::Reversed { pos, neg, .. } => Ok(Outcome::ok(format!(
            "{} | {}\n",
            p.display_word(&pos),
            p.display_word(&neg)
        ))),
        ReverseOutcome::Stuck { pair: (s, t) } => Err(CliError::Usage(format!(
            "reversing stuck: no relation starts with {} on one side and {} on the other",
            p.generator(s).name,
            p.generator(t).name
        ))),
        ReverseOutcome::Diverged { cells } => Err(CliError::Core(Error::Inconclusive(format!(
            "reversing did not finish within {cells} cells"
        )))),
    }
}

fn conj(file: &Path, limits: Limits, words: &[String]) -> Result<Outcome, CliError> {
    let (a, b) = two(words)?;
    let l = load(file, limits)?;
    let ctx = &l.ctx;
    let m = need_map(&l)?;
    let (g, h) = (parse_signed(ctx, a)?, parse_signed(ctx, b)?);
    match are_conjugate_words(ctx, m, &g, &h)? {
        Some(w) => Ok(Outcome::ok(format!(
            "yes witness: {}\n",
            ctx.presentation().display_signed(&w.free_reduce())
        ))),
        None => Ok(verdict(false, "", "no")),
    }
}

fn sss(file: &Path, limits: Limits, word: &str) -> Result<Outcome, CliError> {
    let l = load(file, limits)?;
    let ctx = &l.ctx;
    let m = need_map(&l)?;
    let g = m.delta_normalize(&parse_signed(ctx, word)?)?;
    let set = sliding_circuit_set(m, &g, ctx.limits().node_budget)?;
    let mut out = String::new();
    for n in &set.nodes {
        let c = m.to_signed_word(&n.conjugator).free_reduce();
        out.push_str(&format!(
            "{} | inf {} sup {} | witness: {}\n",
            m.display(&n.element),
            n.inf,
            n.sup,
            ctx.presentation().display_signed(&c)
        ));
    }
    Ok(Outcome::ok(out))
}

/// The structure file of a catalog entry, with Δ when there is a map.
pub fn entry_structure(e: &CatalogEntry) -> StructureFile {
    let garside = e.map.as_ref().map(|m| {
        let p: &Presentation = e.context.presentation();
        GarsideSpec::Delta(
            (0..p.object_count())
                .map(|x| m.word(m.delta(garside::ObjectId(x))).clone())
                .collect(),
        )
    });
    StructureFile {
        presentation: e.context.presentation().clone(),
        garside,
    }
}

fn catalog_cmd(key: Option<&str>, emit: Option<&Path>, germ: bool) -> Result<Outcome, CliError> {
    let Some(key) = key else {
        let mut out = String::new();
        for k in catalog::keys() {
            out.push_str(k);
            out.push('\n');
        }
        return Ok(Outcome::ok(out));
    };
    let e = catalog::lookup(key)?;
    if let Some(path) = emit {
        let text = if germ {
            emit_germ(
                e.germ
                    .as_ref()
                    .ok_or_else(|| CliError::Usage(format!("{key} has no germ of simples")))?,
            )
        } else {
            emit_structure(&entry_structure(&e))
        };
        fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        return Ok(Outcome::ok(format!("wrote {}\n", path.display())));
    }
    let p = e.context.presentation();
    let mut out = format!("key: {}\n{}\n", e.key, e.provenance);
    let names: Vec<&str> = p.generators().iter().map(|g| g.name.as_str()).collect();
    out.push_str(&format!("generators: {}\n", names.join(" ")));
    for (a, b) in p.relations() {
        out.push_str(&format!(
            "relation: {} = {}\n",
            p.display_word(a),
            p.display_word(b)
        ));
    }
    match &e.map {
        Some(m) => {
            let d = m.delta(garside::ObjectId(0));
            out.push_str(&format!(
                "delta: {}\nsimples: {}\n",
                p.display_word(m.word(d)),
                m.simple_count()
            ));
        }
        None => out.push_str("delta: none\n"),
    }
    Ok(Outcome::ok(out))
}
