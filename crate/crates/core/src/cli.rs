//! Expression language and command-line front end.
//!
//! Grammar:
//!
//! ```text
//! expr      := factor { "x" factor }
//! factor    := segment | steinberg | tempered
//! segment   := "<" rat "," rat ">_" id
//! steinberg := "St(" id "," int ")" [ "|" rat ]
//! tempered  := "pi{" [ block { "," block } ] "}"
//! block     := "(" id "," int ")"
//! rat       := int | int "/" int
//! ```
//!
//! Whitespace is allowed between tokens. At most one tempered factor may
//! appear and it must come last.

use std::ffi::OsString;
use std::path::Path;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gp::{
    multiplicity_table, DemoOracle, EpsilonOracle, GpPair, MultiplicityTable, TableOracle,
};
use crate::jordan::{
    block_dimension, extended_support_induced, jacquet_feasible, jord_update_from_segment,
    rp_contains, Block, JordUpdate, JordanSet,
};
use crate::linkage::{decide_irreducible, family_not_linked, Triple};
use crate::multiset::Multiset;
use crate::packets::{is_generic, LanglandsParameter, ParamBlock, ParameterJson};
use crate::rational::{format_rational, parse_rational_at, q, Q};
use crate::segcalc::{linked, CuspidalPoint, Segment};
use crate::symbols::{GroupKind, GroupSpace, SymbolDecl, Universe};

/// A non-tempered factor of an induced representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    Segment(Segment),
    /// `St(ρ,a)|·|^twist`.
    Steinberg {
        rho: crate::symbols::SymbolId,
        a: u32,
        twist: Q,
    },
}

impl Factor {
    pub fn segment(&self) -> Segment {
        match *self {
            Factor::Segment(s) => s,
            Factor::Steinberg { rho, a, twist } => {
                Segment::steinberg(rho, a, twist).expect("a >= 1 checked at parse time")
            }
        }
    }
}

/// `π₁ × ... × π_t × π`, with the tempered factor given by its blocks.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Expression {
    pub factors: Vec<Factor>,
    pub tempered: Option<Multiset<Block>>,
}

impl Expression {
    pub fn segments(&self) -> Vec<Segment> {
        self.factors.iter().map(Factor::segment).collect()
    }
}

pub fn parse(input: &str, u: &Universe) -> Result<Expression> {
    let mut p = Cursor {
        s: input.as_bytes(),
        pos: 0,
        u,
    };
    let mut expr = Expression::default();
    p.skip_ws();
    if p.at_end() {
        return Err(Error::syntax(0, "empty expression"));
    }
    loop {
        let start = p.pos;
        let factor = p.factor()?;
        match factor {
            Parsed::Tempered(blocks) => {
                if expr.tempered.is_some() {
                    return Err(Error::syntax(start, "more than one tempered factor"));
                }
                expr.tempered = Some(blocks);
            }
            Parsed::Factor(f) => {
                if expr.tempered.is_some() {
                    return Err(Error::syntax(start, "the tempered factor must come last"));
                }
                expr.factors.push(f);
            }
        }
        p.skip_ws();
        if p.at_end() {
            return Ok(expr);
        }
        p.expect("x")?;
        p.skip_ws();
    }
}

enum Parsed {
    Factor(Factor),
    Tempered(Multiset<Block>),
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
    u: &'a Universe,
}

impl Cursor<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.s.len()
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn starts_with(&self, tok: &str) -> bool {
        self.s[self.pos..].starts_with(tok.as_bytes())
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.starts_with(tok) {
            self.pos += tok.len();
            Ok(())
        } else {
            Err(Error::syntax(self.pos, format!("expected `{tok}`")))
        }
    }

    fn token(&mut self, accept: impl Fn(u8) -> bool) -> &str {
        let start = self.pos;
        while self.peek().is_some_and(&accept) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).expect("ascii token")
    }

    fn factor(&mut self) -> Result<Parsed> {
        if self.starts_with("<") {
            self.segment().map(|s| Parsed::Factor(Factor::Segment(s)))
        } else if self.starts_with("St(") {
            self.steinberg().map(Parsed::Factor)
        } else if self.starts_with("pi{") {
            self.tempered().map(Parsed::Tempered)
        } else {
            Err(Error::syntax(
                self.pos,
                "expected `<e,f>_id`, `St(id,a)` or `pi{...}`",
            ))
        }
    }

    fn rational(&mut self) -> Result<Q> {
        self.skip_ws();
        let start = self.pos;
        let tok = self
            .token(|b| b.is_ascii_digit() || b == b'-' || b == b'/')
            .to_string();
        if tok.is_empty() {
            return Err(Error::syntax(start, "expected a rational"));
        }
        parse_rational_at(&tok, start)
    }

    fn int(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        let tok = self.token(|b| b.is_ascii_digit()).to_string();
        if tok.is_empty() {
            return Err(Error::syntax(start, "expected an integer"));
        }
        tok.parse()
            .map_err(|_| Error::syntax(start, format!("integer `{tok}` out of range")))
    }

    fn positive(&mut self) -> Result<u32> {
        let a = self.int()?;
        if a == 0 {
            return Err(Error::validation("block length must be at least 1"));
        }
        Ok(a)
    }

    fn symbol(&mut self) -> Result<crate::symbols::SymbolId> {
        self.skip_ws();
        let start = self.pos;
        let tok = self
            .token(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'\'')
            .to_string();
        if tok.is_empty() {
            return Err(Error::syntax(start, "expected a symbol id"));
        }
        self.u.lookup(&tok)
    }

    fn punct(&mut self, tok: &str) -> Result<()> {
        self.skip_ws();
        self.expect(tok)
    }

    fn segment(&mut self) -> Result<Segment> {
        self.expect("<")?;
        let e = self.rational()?;
        self.punct(",")?;
        let f = self.rational()?;
        self.punct(">")?;
        self.expect("_")?;
        let rho = self.symbol()?;
        Segment::new(rho, e, f)
    }

    fn steinberg(&mut self) -> Result<Factor> {
        self.expect("St(")?;
        let rho = self.symbol()?;
        self.punct(",")?;
        let a = self.positive()?;
        self.punct(")")?;
        let mut twist = q(0);
        let save = self.pos;
        self.skip_ws();
        if self.starts_with("|") {
            self.pos += 1;
            twist = self.rational()?;
        } else {
            self.pos = save;
        }
        Ok(Factor::Steinberg { rho, a, twist })
    }

    fn tempered(&mut self) -> Result<Multiset<Block>> {
        self.expect("pi{")?;
        let mut blocks = Multiset::new();
        self.skip_ws();
        if self.starts_with("}") {
            self.pos += 1;
            return Ok(blocks);
        }
        loop {
            self.punct("(")?;
            let rho = self.symbol()?;
            self.punct(",")?;
            let a = self.positive()?;
            self.punct(")")?;
            blocks.insert(Block::new(rho, a));
            self.skip_ws();
            if self.starts_with("}") {
                self.pos += 1;
                return Ok(blocks);
            }
            self.expect(",")?;
        }
    }
}

pub fn format_segment(u: &Universe, s: &Segment) -> String {
    format!(
        "<{},{}>_{}",
        format_rational(&s.e()),
        format_rational(&s.f()),
        u.name(s.rho())
    )
}

pub fn format_blocks(u: &Universe, blocks: &Multiset<Block>) -> String {
    let inner: Vec<String> = blocks
        .iter()
        .map(|b| format!("({},{})", u.name(b.rho), b.a))
        .collect();
    format!("pi{{{}}}", inner.join(","))
}

pub fn format_point(u: &Universe, p: &CuspidalPoint) -> String {
    format!("{}^{}", u.name(p.rho), format_rational(&p.x))
}

pub fn format_factor(u: &Universe, f: &Factor) -> String {
    match f {
        Factor::Segment(s) => format_segment(u, s),
        Factor::Steinberg { rho, a, twist } => {
            let mut out = format!("St({},{a})", u.name(*rho));
            if *twist != q(0) {
                out.push('|');
                out.push_str(&format_rational(twist));
            }
            out
        }
    }
}

/// Canonical text: lowest-terms rationals, zero twists omitted, tempered
/// blocks sorted.
pub fn format(e: &Expression, u: &Universe) -> String {
    let mut parts: Vec<String> = e.factors.iter().map(|f| format_factor(u, f)).collect();
    if let Some(t) = &e.tempered {
        parts.push(format_blocks(u, t));
    }
    parts.join(" x ")
}

/// Comma-separated `id^x` points; an empty string is the empty sequence.
pub fn parse_points(input: &str, u: &Universe) -> Result<Vec<CuspidalPoint>> {
    let mut out = Vec::new();
    if input.trim().is_empty() {
        return Ok(out);
    }
    let mut offset = 0;
    for piece in input.split(',') {
        let lead = piece.len() - piece.trim_start().len();
        let item = piece.trim();
        let (name, x) = item.split_once('^').ok_or_else(|| {
            Error::syntax(offset + lead, format!("expected `id^x`, got `{item}`"))
        })?;
        let x = parse_rational_at(x, offset + lead + name.len() + 1)?;
        out.push(CuspidalPoint::new(u.lookup(name)?, x));
        offset += piece.len() + 1;
    }
    Ok(out)
}

/// Built-in universe used when no `--universe` file is given.
pub fn default_universe() -> Universe {
    let decl = |id: &str, dim, selfdual: &str| SymbolDecl {
        id: id.into(),
        dim,
        selfdual: crate::symbols::SelfDualDecl::Type(selfdual.into()),
    };
    let pair = |id: &str, dual: &str| SymbolDecl {
        id: id.into(),
        dim: 1,
        selfdual: crate::symbols::SelfDualDecl::Dual { dual: dual.into() },
    };
    Universe::from_decls(&[
        decl("r1", 1, "O"),
        decl("r2", 2, "S"),
        pair("r3", "r3v"),
        pair("r3v", "r3"),
        decl("r4", 2, "O"),
        decl("r5", 1, "S"),
    ])
    .expect("built-in universe is valid")
}

/// Group of a tempered factor: the one given, or the unique group whose dual
/// dimension matches the blocks and for which the blocks form an admissible
/// Jordan set.
pub fn infer_group(u: &Universe, blocks: &Multiset<Block>, quasisplit: bool) -> Result<GroupSpace> {
    let n = block_dimension(u, blocks) as u32;
    let candidates: Vec<GroupSpace> = if n % 2 == 1 {
        vec![GroupSpace::new(GroupKind::Symplectic, n - 1)?]
    } else {
        vec![
            GroupSpace::new(GroupKind::OddOrthogonal, n + 1)?,
            GroupSpace::new(GroupKind::EvenOrthogonal, n)?,
        ]
    };
    let valid: Vec<JordanSet> = candidates
        .into_iter()
        .filter_map(|g| JordanSet::new(u, g.with_quasisplit(quasisplit), blocks.clone()).ok())
        .collect();
    let pick: Vec<&JordanSet> = if valid.len() > 1 {
        valid
            .iter()
            .filter(|j| j.parity_multiplicities_ok(u))
            .collect()
    } else {
        valid.iter().collect()
    };
    match pick.as_slice() {
        [j] => Ok(j.group().clone()),
        [] if valid.is_empty() => Err(Error::validation(format!(
            "no group fits the tempered blocks {}",
            format_blocks(u, blocks)
        ))),
        _ => Err(Error::validation(format!(
            "group of {} is ambiguous (dual dimension {n}); pass --group",
            format_blocks(u, blocks)
        ))),
    }
}

/// `sp:4`, `so:5`, `so:6`.
pub fn parse_group(spec: &str) -> Result<GroupSpace> {
    let bad = || Error::syntax(0, format!("bad group `{spec}`, expected sp:N or so:N"));
    let (kind, dim) = spec.split_once(':').ok_or_else(bad)?;
    let dim: u32 = dim.parse().map_err(|_| bad())?;
    match kind {
        "sp" => GroupSpace::new(GroupKind::Symplectic, dim),
        "so" => Ok(GroupSpace::orthogonal(dim)),
        _ => Err(bad()),
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "parind",
    version,
    about = "Decisions on parabolic induction for classical p-adic groups"
)]
struct Cli {
    /// Symbol universe file (JSON list of {id, dim, selfdual}).
    #[arg(long, global = true)]
    universe: Option<String>,

    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,

    /// Group of the tempered factor, e.g. so:5 or sp:4.
    #[arg(long, global = true)]
    group: Option<String>,

    /// Mark the group as not quasi-split.
    #[arg(long, global = true)]
    nonsplit: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Zelevinsky linkage of two segments, or linkage of a family with a
    /// tempered factor when the expression ends in pi{...}.
    Linked { expr: String },
    /// Irreducibility verdict for an induced representation.
    Irred {
        /// Assert that the tempered factor is generic.
        #[arg(long)]
        generic: bool,
        expr: String,
    },
    /// Membership of (SYM, X) in the possible-reducibility set.
    Rp {
        sym: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
        expr: String,
    },
    /// Extended cuspidal support of an induced representation.
    Suppext { expr: String },
    /// Genericity of a Langlands parameter (JSON file or expression).
    Generic { param: String },
    /// Multiplicity table for a pair of parameters.
    Gp(GpArgs),
    /// Jordan blocks after inducing from a segment.
    JordUpdate { segment: String, expr: String },
    /// Feasibility of a Jacquet-module sequence, given as `id^x,id^x,...`.
    Jacquet {
        #[arg(allow_hyphen_values = true)]
        points: String,
        expr: String,
    },
}

#[derive(Args, Debug)]
struct GpArgs {
    param: String,
    param_prime: String,
    /// Oracle table file.
    #[arg(
        long,
        conflicts_with = "demo_oracle",
        required_unless_present = "demo_oracle"
    )]
    oracle: Option<String>,
    /// Use the built-in non-mathematical demo oracle.
    #[arg(long)]
    demo_oracle: bool,
    /// Opaque label of the vector v0.
    #[arg(long)]
    nu0: Option<String>,
    /// Mark the smaller group as not quasi-split.
    #[arg(long)]
    nonsplit_prime: bool,
}

/// Exit status and the text destined for stdout and stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. } => 2,
        _ => 1,
    }
}

struct Ctx {
    universe: Universe,
    group: Option<GroupSpace>,
    nonsplit: bool,
}

struct Outcome {
    inputs: Value,
    key: &'static str,
    value: Value,
    text: String,
}

pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CliOutput {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                CliOutput {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let name = command_name(&cli.command);
    match execute(&cli) {
        Ok(out) => {
            let stdout = if cli.json {
                let mut obj = serde_json::Map::new();
                obj.insert("command".into(), json!(name));
                obj.insert("inputs".into(), out.inputs);
                obj.insert(out.key.into(), out.value);
                format!("{}\n", Value::Object(obj))
            } else {
                format!("{}\n", out.text)
            };
            CliOutput {
                code: 0,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => {
            let code = exit_code(&e);
            if cli.json {
                let mut err = json!({"kind": e.kind(), "message": e.to_string()});
                if let Error::Syntax { pos, .. } = &e {
                    err["position"] = json!(pos);
                }
                let body = json!({"command": name, "error": err, "exit_code": code});
                CliOutput {
                    code,
                    stdout: format!("{body}\n"),
                    stderr: String::new(),
                }
            } else {
                CliOutput {
                    code,
                    stdout: String::new(),
                    stderr: format!("error: {e}\n"),
                }
            }
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Linked { .. } => "linked",
        Command::Irred { .. } => "irred",
        Command::Rp { .. } => "rp",
        Command::Suppext { .. } => "suppext",
        Command::Generic { .. } => "generic",
        Command::Gp(_) => "gp",
        Command::JordUpdate { .. } => "jord-update",
        Command::Jacquet { .. } => "jacquet",
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let universe = match &cli.universe {
        Some(path) => Universe::from_json_file(path)?,
        None => default_universe(),
    };
    let group = cli.group.as_deref().map(parse_group).transpose()?;
    let ctx = Ctx {
        universe,
        group,
        nonsplit: cli.nonsplit,
    };
    let u = &ctx.universe;
    match &cli.command {
        Command::Linked { expr } => {
            let e = parse(expr, u)?;
            let segs = e.segments();
            let (value, j) = match &e.tempered {
                None => {
                    let [s1, s2] = segs.as_slice() else {
                        return Err(Error::validation(
                            "linked needs two segments or a family ending in pi{...}",
                        ));
                    };
                    (linked(s1, s2)?, None)
                }
                Some(blocks) => {
                    let j = ctx.jordan(blocks)?;
                    let ts = triples(&segs)?;
                    (!family_not_linked(u, &ts, &j), Some(j))
                }
            };
            Ok(Outcome {
                inputs: expr_inputs(u, &e, j.as_ref()),
                key: "verdict",
                value: json!(value),
                text: value.to_string(),
            })
        }
        Command::Irred { generic, expr } => {
            let e = parse(expr, u)?;
            let j = ctx.jordan(tempered_of(&e)?)?;
            let ts = triples(&e.segments())?;
            let v = decide_irreducible(u, &ts, &j, *generic)?;
            let mut inputs = expr_inputs(u, &e, Some(&j));
            inputs["generic"] = json!(generic);
            Ok(Outcome {
                inputs,
                key: "verdict",
                value: json!(v.to_string()),
                text: v.to_string(),
            })
        }
        Command::Rp { sym, x, expr } => {
            let rho = u.lookup(sym)?;
            let xq = parse_rational_at(x, 0)?;
            let e = parse(expr, u)?;
            if !e.factors.is_empty() {
                return Err(Error::validation("rp takes a tempered expression pi{...}"));
            }
            let j = ctx.jordan(tempered_of(&e)?)?;
            let v = rp_contains(u, rho, xq, &j);
            let mut inputs = expr_inputs(u, &e, Some(&j));
            inputs["symbol"] = json!(sym);
            inputs["x"] = json!(format_rational(&xq));
            Ok(Outcome {
                inputs,
                key: "verdict",
                value: json!(v),
                text: v.to_string(),
            })
        }
        Command::Suppext { expr } => {
            let e = parse(expr, u)?;
            let j = ctx.jordan(tempered_of(&e)?)?;
            let support = extended_support_induced(u, &e.segments(), &j);
            let mut points: Vec<&CuspidalPoint> = support.points.iter().collect();
            points.sort_by(|a, b| u.name(a.rho).cmp(u.name(b.rho)).then(b.x.cmp(&a.x)));
            let labels: Vec<String> = points.iter().map(|p| format_point(u, p)).collect();
            Ok(Outcome {
                inputs: expr_inputs(u, &e, Some(&j)),
                key: "payload",
                value: json!({"points": labels}),
                text: format!("{{{}}}", labels.join(", ")),
            })
        }
        Command::Generic { param } => {
            let p = ctx.parameter(param, ctx.nonsplit)?;
            let v = is_generic(u, &p);
            let mut text = v.to_string();
            for w in p.warnings() {
                text.push_str(&format!("\nwarning: {w}"));
            }
            Ok(Outcome {
                inputs: json!({"parameter": p.to_json(u), "warnings": p.warnings()}),
                key: "verdict",
                value: json!(v),
                text,
            })
        }
        Command::Gp(args) => {
            if ctx.group.is_some() {
                return Err(Error::syntax(
                    0,
                    "--group is not used by gp; give parameters as JSON files to fix groups",
                ));
            }
            let p = ctx.parameter(&args.param, ctx.nonsplit)?;
            let p2 = ctx.parameter(&args.param_prime, args.nonsplit_prime)?;
            let pair = GpPair::new(p.group().clone(), p2.group().clone(), args.nu0.clone())?;
            let table_oracle;
            let oracle: &dyn EpsilonOracle = match &args.oracle {
                Some(path) => {
                    table_oracle = TableOracle::from_json_file(u, path)?;
                    &table_oracle
                }
                None => &DemoOracle,
            };
            let t = multiplicity_table(u, &p, &p2, &pair, oracle)?;
            Ok(Outcome {
                inputs: json!({
                    "parameter": p.to_json(u),
                    "parameter_prime": p2.to_json(u),
                    "nu0": args.nu0,
                    "oracle": args.oracle.as_deref().unwrap_or("demo"),
                }),
                key: "payload",
                value: t.to_json(u),
                text: render_table(u, &t, &pair),
            })
        }
        Command::JordUpdate { segment, expr } => {
            let s = parse(segment, u)?;
            let seg = match (s.factors.as_slice(), &s.tempered) {
                ([f], None) => f.segment(),
                _ => return Err(Error::validation("jord-update takes a single segment")),
            };
            let e = parse(expr, u)?;
            if !e.factors.is_empty() {
                return Err(Error::validation(
                    "jord-update takes a tempered expression pi{...}",
                ));
            }
            let j = ctx.jordan(tempered_of(&e)?)?;
            let mut inputs = expr_inputs(u, &e, Some(&j));
            inputs["segment"] = json!(format_segment(u, &seg));
            let (value, text) = match jord_update_from_segment(u, &seg, &j)? {
                JordUpdate::Updated(k) => (
                    json!({"result": "updated", "jordan": k.to_json(u), "text": format_blocks(u, k.blocks())}),
                    format!("{} over {}", format_blocks(u, k.blocks()), k.group()),
                ),
                JordUpdate::Incompatible => (
                    json!({"result": "incompatible"}),
                    "Incompatible".to_string(),
                ),
            };
            Ok(Outcome {
                inputs,
                key: "payload",
                value,
                text,
            })
        }
        Command::Jacquet { points, expr } => {
            let pts = parse_points(points, u)?;
            let e = parse(expr, u)?;
            if !e.factors.is_empty() {
                return Err(Error::validation(
                    "jacquet takes a tempered expression pi{...}",
                ));
            }
            let j = ctx.jordan(tempered_of(&e)?)?;
            let v = jacquet_feasible(u, &pts, &j);
            let mut inputs = expr_inputs(u, &e, Some(&j));
            inputs["points"] = json!(pts.iter().map(|p| format_point(u, p)).collect::<Vec<_>>());
            Ok(Outcome {
                inputs,
                key: "verdict",
                value: json!(v),
                text: v.to_string(),
            })
        }
    }
}

impl Ctx {
    fn jordan(&self, blocks: &Multiset<Block>) -> Result<JordanSet> {
        let u = &self.universe;
        let g = match &self.group {
            Some(g) => g.clone().with_quasisplit(!self.nonsplit),
            None => infer_group(u, blocks, !self.nonsplit)?,
        };
        JordanSet::new(u, g, blocks.clone())
    }

    /// A parameter from a JSON file, or from an expression whose GL factors
    /// carry positive exponents. For expressions `--group` names the group
    /// of the whole parameter.
    fn parameter(&self, arg: &str, nonsplit: bool) -> Result<LanglandsParameter> {
        let u = &self.universe;
        if arg.ends_with(".json") && Path::new(arg).exists() {
            let text = std::fs::read_to_string(arg)?;
            let pj: ParameterJson = serde_json::from_str(&text)
                .map_err(|e| Error::validation(format!("parameter file: {e}")))?;
            return LanglandsParameter::from_json(u, &pj);
        }
        let e = parse(arg, u)?;
        parameter_from_expression(u, &e, self.group.clone(), !nonsplit)
    }
}

/// A parameter from an expression whose GL factors carry positive
/// exponents; `pi{...}` holds the tempered blocks. `group` names the group
/// of the whole parameter and is inferred from the tempered blocks when
/// absent.
pub fn parameter_from_expression(
    u: &Universe,
    e: &Expression,
    group: Option<GroupSpace>,
    quasisplit: bool,
) -> Result<LanglandsParameter> {
    let mut blocks: Multiset<ParamBlock> = Multiset::new();
    let mut gl_dim = 0i64;
    for s in e.segments() {
        if s.is_empty() {
            return Err(Error::validation(
                "empty segments cannot be parameter blocks",
            ));
        }
        let b = s.exponent();
        if b <= q(0) {
            return Err(Error::validation(format!(
                "GL factor {} needs a positive exponent; tempered blocks go inside pi{{...}}",
                format_segment(u, &s)
            )));
        }
        let a = s.len() as u32;
        gl_dim += 2 * a as i64 * u.dim(s.rho()) as i64;
        blocks.insert(ParamBlock::new(s.rho(), a, b));
    }
    let tempered = e.tempered.clone().unwrap_or_default();
    for b in tempered.iter() {
        blocks.insert(ParamBlock::new(b.rho, b.a, q(0)));
    }
    let group = match group {
        Some(g) => g,
        None => {
            let small = infer_group(u, &tempered, true)?;
            small.same_type_with_dual_dim(small.dual_dim() as i64 + gl_dim)?
        }
    };
    LanglandsParameter::new(u, group.with_quasisplit(quasisplit), blocks, None)
}

fn tempered_of(e: &Expression) -> Result<&Multiset<Block>> {
    e.tempered
        .as_ref()
        .ok_or_else(|| Error::validation("the expression needs a tempered factor pi{...}"))
}

fn triples(segs: &[Segment]) -> Result<Vec<Triple>> {
    segs.iter().map(|s| Triple::from_segment(*s)).collect()
}

fn expr_inputs(u: &Universe, e: &Expression, j: Option<&JordanSet>) -> Value {
    let mut v = json!({"expression": format(e, u)});
    if let Some(j) = j {
        v["group"] = serde_json::to_value(j.group()).expect("plain data serializes");
    }
    v
}

fn render_table(u: &Universe, t: &MultiplicityTable, pair: &GpPair) -> String {
    let e = t.e.map_or("not queried".to_string(), |e| e.to_string());
    let mut lines = vec![format!(
        "{} x {}: mu = {}, E = {}, total = {}",
        pair.g(),
        pair.gprime(),
        t.mu,
        e,
        t.total_mass()
    )];
    if t.coarse_rows || t.coarse_cols {
        lines.push("even orthogonal labels are taken up to pi <-> pi^w".to_string());
    }
    if t.rows.is_empty() || t.cols.is_empty() {
        lines.push("empty packet: no members".to_string());
        return lines.join("\n");
    }
    let row_labels: Vec<String> = t.rows.iter().map(|c| c.label(u)).collect();
    let width = row_labels.iter().map(String::len).max().unwrap_or(0);
    let header: Vec<String> = t.cols.iter().map(|c| c.label(u)).collect();
    lines.push(format!("{:width$} | {}", "", header.join(" | ")));
    for (label, row) in row_labels.iter().zip(&t.entries) {
        let cells: Vec<String> = row
            .iter()
            .zip(&header)
            .map(|(x, h)| format!("{:>w$}", x, w = h.len()))
            .collect();
        lines.push(format!("{label:width$} | {}", cells.join(" | ")));
    }
    lines.join("\n")
}
