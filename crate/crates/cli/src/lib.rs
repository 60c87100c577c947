//! Command-line surface over `neretin-core`.
//!
//! Every subcommand takes expressions as positional arguments. With `--batch`
//! the arguments are read from stdin instead, one invocation per line, the
//! arguments on a line separated by `|`.

use clap::{Parser, Subcommand, ValueEnum};
use neretin_core::boundary::{gromov_product, visual_distance};
use neretin_core::elements::{format_support, nonlocal_compactness_sequence, random_element_with, random_portrait, random_ray};
use neretin_core::epstein::{double_commutator_witness, restriction_witness, simplicity_certificate};
use neretin_core::generation::{edge_stabilizer_factorization, factor_generating_set};
use neretin_core::higman_thompson::{
    conjugator_for_pair_products, decompose_into_transpositions, embed_via_edge, even_transposition_split, theta, Edge,
    HtElement,
};
use neretin_core::text::{self, Context, ParseError, Value};
use neretin_core::{Address, Degree, Error, FixedSet, Ray, TreePair};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

/// Version of the json-lines output layout.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "neretin", version, about = "Exact computations in Neretin and Higman-Thompson groups")]
pub struct Cli {
    /// Tree degree: every vertex has q+1 neighbours.
    #[arg(long, global = true)]
    q: Option<u32>,
    /// Number of trees for forest elements.
    #[arg(long, global = true, default_value_t = 2)]
    r: u32,
    /// Seed for `random`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Read `|`-separated arguments from stdin, one invocation per line.
    #[arg(long, global = true)]
    batch: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    JsonLines,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Reduced form of an element.
    Normalize { args: Vec<String> },
    /// Whether two elements are equal.
    Eq { args: Vec<String> },
    /// Product of elements, rightmost acting first.
    Compose { args: Vec<String> },
    /// Image of a ray.
    Act { args: Vec<String> },
    /// Visual distance between rays.
    Dist { args: Vec<String> },
    /// Uniform distance between elements.
    Udist { args: Vec<String> },
    /// Gromov product of rays at the basepoint.
    Gromov { args: Vec<String> },
    /// Sign homomorphism of a forest element.
    Theta { args: Vec<String> },
    /// Support of an element as domain balls.
    Support { args: Vec<String> },
    /// Scale exponent of every piece.
    Scales { args: Vec<String> },
    /// Fixed ends, leaf by leaf.
    Fixed { args: Vec<String> },
    /// Whether an element is a tree automorphism.
    Isaut { args: Vec<String> },
    /// Whether an automorphism preserves the vertex 2-coloring.
    Istp { args: Vec<String> },
    /// Image of a vertex under an automorphism.
    Vimage { args: Vec<String> },
    /// Forest element as a product of transpositions.
    Transpositions { args: Vec<String> },
    /// Transposition as a product of q transpositions (even q).
    Evensplit { args: Vec<String> },
    /// Conjugator between two products of two transpositions.
    Conjpair { args: Vec<String> },
    /// Image of a forest element in the tree group through an edge.
    Embed { args: Vec<String> },
    /// Mixed word as a tree pair times a basepoint-fixing automorphism.
    Factor { args: Vec<String> },
    /// Type-preserving automorphism as a product of edge-fixing elements.
    Edgefactor { args: Vec<String> },
    /// Element agreeing with g on a ball, in the normal closure of alpha.
    #[command(name = "epstein-restrict")]
    EpsteinRestrict { args: Vec<String> },
    /// Rewrites comm(g1,g2) as comm(rho1,rho2).
    #[command(name = "epstein-comm")]
    EpsteinComm { args: Vec<String> },
    /// comm(g1,g2) as a word in conjugates of alpha.
    #[command(name = "simplicity-cert")]
    SimplicityCert { args: Vec<String> },
    /// Sequence of elements with growing scales and shrinking supports.
    #[command(name = "demo-nlc")]
    DemoNlc { args: Vec<String> },
    /// Seeded random values: `random [tp|pt|ht|ray] [count] [size]`.
    Random { args: Vec<String> },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Normalize { .. } => "normalize",
            Command::Eq { .. } => "eq",
            Command::Compose { .. } => "compose",
            Command::Act { .. } => "act",
            Command::Dist { .. } => "dist",
            Command::Udist { .. } => "udist",
            Command::Gromov { .. } => "gromov",
            Command::Theta { .. } => "theta",
            Command::Support { .. } => "support",
            Command::Scales { .. } => "scales",
            Command::Fixed { .. } => "fixed",
            Command::Isaut { .. } => "isaut",
            Command::Istp { .. } => "istp",
            Command::Vimage { .. } => "vimage",
            Command::Transpositions { .. } => "transpositions",
            Command::Evensplit { .. } => "evensplit",
            Command::Conjpair { .. } => "conjpair",
            Command::Embed { .. } => "embed",
            Command::Factor { .. } => "factor",
            Command::Edgefactor { .. } => "edgefactor",
            Command::EpsteinRestrict { .. } => "epstein-restrict",
            Command::EpsteinComm { .. } => "epstein-comm",
            Command::SimplicityCert { .. } => "simplicity-cert",
            Command::DemoNlc { .. } => "demo-nlc",
            Command::Random { .. } => "random",
        }
    }

    fn args(&self) -> &[String] {
        match self {
            Command::Normalize { args }
            | Command::Eq { args }
            | Command::Compose { args }
            | Command::Act { args }
            | Command::Dist { args }
            | Command::Udist { args }
            | Command::Gromov { args }
            | Command::Theta { args }
            | Command::Support { args }
            | Command::Scales { args }
            | Command::Fixed { args }
            | Command::Isaut { args }
            | Command::Istp { args }
            | Command::Vimage { args }
            | Command::Transpositions { args }
            | Command::Evensplit { args }
            | Command::Conjpair { args }
            | Command::Embed { args }
            | Command::Factor { args }
            | Command::Edgefactor { args }
            | Command::EpsteinRestrict { args }
            | Command::EpsteinComm { args }
            | Command::SimplicityCert { args }
            | Command::DemoNlc { args }
            | Command::Random { args } => args,
        }
    }
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Failure of a command with its exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad syntax, bad literal, or wrong kind of argument: exit 1.
    Input(String),
    /// A mathematical precondition failed: exit 2.
    Domain(Error),
    /// An internal check failed: exit 3.
    Verification(Error),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Domain(_) => 2,
            Failure::Verification(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Input(m) => m.clone(),
            Failure::Domain(e) | Failure::Verification(e) => e.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::VerificationFailed(_) => Failure::Verification(e),
            e => Failure::Domain(e),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Failure {
        Failure::Input(e.to_string())
    }
}

/// A command's answer as display text and as a JSON value.
struct Reply {
    text: String,
    json: serde_json::Value,
}

impl Reply {
    fn plain(s: impl ToString) -> Reply {
        let s = s.to_string();
        Reply { json: json!(s), text: s }
    }

    fn lines(items: Vec<String>) -> Reply {
        Reply { text: items.join("\n"), json: json!(items) }
    }
}

type Res<T> = std::result::Result<T, Failure>;

struct Session {
    ctx: Context,
    seed: u64,
}

impl Session {
    fn value(&self, s: &str) -> Res<Value> {
        Ok(text::eval_str(s, self.ctx)?)
    }

    fn wrong_kind(what: &str, v: &Value) -> Failure {
        Failure::Input(format!("expected {what}, got {} `{v}`", v.kind()))
    }

    fn element(&self, s: &str) -> Res<TreePair> {
        let v = self.value(s)?;
        v.as_pair().ok_or_else(|| Self::wrong_kind("a tree pair or portrait", &v))
    }

    fn ht(&self, s: &str) -> Res<HtElement> {
        match self.value(s)? {
            Value::Ht(e) => Ok(e),
            v => Err(Self::wrong_kind("a forest element", &v)),
        }
    }

    fn ray(&self, s: &str) -> Res<Ray> {
        match self.value(s)? {
            Value::Ray(r) => Ok(r),
            v => Err(Self::wrong_kind("a ray", &v)),
        }
    }

    fn address(&self, s: &str) -> Res<Address> {
        match self.value(s)? {
            Value::Address(a) => Ok(a),
            v => Err(Self::wrong_kind("an address", &v)),
        }
    }

    fn edge(&self, s: &str) -> Res<Edge> {
        match self.value(s)? {
            Value::Edge(e) => Ok(e),
            v => Err(Self::wrong_kind("an edge", &v)),
        }
    }

    fn number(s: &str) -> Res<usize> {
        s.trim().parse().map_err(|_| Failure::Input(format!("expected a number, got `{s}`")))
    }
}

fn arity(name: &str, args: &[String], min: usize, max: usize) -> Res<()> {
    if args.len() < min || args.len() > max {
        let want = if min == max { min.to_string() } else { format!("{min} to {max}") };
        return Err(Failure::Input(format!("{name} takes {want} arguments, got {}", args.len())));
    }
    Ok(())
}

fn execute(s: &Session, cmd: &Command, args: &[String]) -> Res<Reply> {
    let name = cmd.name();
    let a = args;
    let fixed = |n: usize| arity(name, a, n, n);
    match cmd {
        Command::Normalize { .. } => {
            fixed(1)?;
            Ok(Reply::plain(s.value(&a[0])?))
        }
        Command::Eq { .. } => {
            fixed(2)?;
            let eq = match (s.value(&a[0])?, s.value(&a[1])?) {
                (Value::Ht(x), Value::Ht(y)) => x.equals(&y)?,
                (x, y) => {
                    let x = x.as_pair().ok_or_else(|| Session::wrong_kind("an element", &x))?;
                    let y = y.as_pair().ok_or_else(|| Session::wrong_kind("an element", &y))?;
                    x.equals(&y)?
                }
            };
            Ok(Reply { text: eq.to_string(), json: json!(eq) })
        }
        Command::Compose { .. } => {
            arity(name, a, 1, usize::MAX)?;
            Ok(Reply::plain(s.value(&a.join(" * "))?))
        }
        Command::Act { .. } => {
            fixed(2)?;
            let g = s.element(&a[0])?;
            Ok(Reply::plain(g.act(&s.ray(&a[1])?)))
        }
        Command::Dist { .. } => {
            fixed(2)?;
            Ok(Reply::plain(visual_distance(&s.ray(&a[0])?, &s.ray(&a[1])?)))
        }
        Command::Udist { .. } => {
            fixed(2)?;
            Ok(Reply::plain(s.element(&a[0])?.uniform_distance(&s.element(&a[1])?)?))
        }
        Command::Gromov { .. } => {
            fixed(2)?;
            Ok(match gromov_product(&s.ray(&a[0])?, &s.ray(&a[1])?) {
                Some(n) => Reply { text: n.to_string(), json: json!(n) },
                None => Reply { text: "inf".into(), json: json!("inf") },
            })
        }
        Command::Theta { .. } => {
            fixed(1)?;
            let t = theta(&s.ht(&a[0])?);
            Ok(Reply { text: t.to_string(), json: json!(t) })
        }
        Command::Support { .. } => {
            fixed(1)?;
            let sup = s.element(&a[0])?.support();
            Ok(Reply { text: format_support(&sup), json: json!(sup.iter().map(|v| v.to_string()).collect::<Vec<_>>()) })
        }
        Command::Scales { .. } => {
            fixed(1)?;
            let items: Vec<String> = s
                .element(&a[0])?
                .piecewise_scales()
                .into_iter()
                .map(|(v, e)| format!("{v}: {}", e.0))
                .collect();
            Ok(Reply::lines(items))
        }
        Command::Fixed { .. } => {
            fixed(1)?;
            let items: Vec<String> = s
                .element(&a[0])?
                .fixed_rays()
                .into_iter()
                .map(|(v, f)| match f {
                    FixedSet::WholeBall => format!("{v}: ball"),
                    FixedSet::Single(r) => format!("{v}: {r}"),
                    FixedSet::Empty => format!("{v}: none"),
                })
                .collect();
            Ok(Reply::lines(items))
        }
        Command::Isaut { .. } => {
            fixed(1)?;
            let b = s.element(&a[0])?.is_automorphism();
            Ok(Reply { text: b.to_string(), json: json!(b) })
        }
        Command::Istp { .. } => {
            fixed(1)?;
            let b = s.element(&a[0])?.is_type_preserving()?;
            Ok(Reply { text: b.to_string(), json: json!(b) })
        }
        Command::Vimage { .. } => {
            fixed(2)?;
            Ok(Reply::plain(s.element(&a[0])?.vertex_image(&s.address(&a[1])?)?))
        }
        Command::Transpositions { .. } => {
            fixed(1)?;
            let e = s.ht(&a[0])?;
            let ts = decompose_into_transpositions(&e);
            Ok(product_reply(ts.iter().map(|t| t.to_string()).collect()))
        }
        Command::Evensplit { .. } => {
            fixed(1)?;
            let e = s.ht(&a[0])?;
            let ts = even_transposition_split(&e)?;
            Ok(product_reply(ts.iter().map(|t| t.to_string()).collect()))
        }
        Command::Conjpair { .. } => {
            fixed(2)?;
            Ok(Reply::plain(conjugator_for_pair_products(&s.ht(&a[0])?, &s.ht(&a[1])?)?))
        }
        Command::Embed { .. } => {
            fixed(2)?;
            Ok(Reply::plain(embed_via_edge(&s.ht(&a[0])?, &s.edge(&a[1])?)?))
        }
        Command::Factor { .. } => {
            fixed(1)?;
            let w = text::word_str(&a[0], s.ctx)?;
            let f = factor_generating_set(&w)?;
            Ok(Reply {
                text: format!("{} * {}", f.ht_part, f.aut_part),
                json: json!({ "tree_pair": f.ht_part.to_string(), "portrait": f.aut_part.to_string() }),
            })
        }
        Command::Edgefactor { .. } => {
            fixed(2)?;
            let factors = edge_stabilizer_factorization(&s.element(&a[0])?, &s.edge(&a[1])?)?;
            let text = factors.iter().map(|f| format!("{}  fixes {}", f.element, f.fixed_edge)).collect::<Vec<_>>();
            let js = factors
                .iter()
                .map(|f| json!({ "element": f.element.to_string(), "fixed_edge": f.fixed_edge.to_string() }))
                .collect::<Vec<_>>();
            Ok(Reply { text: text.join("\n"), json: json!(js) })
        }
        Command::EpsteinRestrict { .. } => {
            fixed(3)?;
            let w = restriction_witness(&s.element(&a[0])?, &s.address(&a[1])?, &s.element(&a[2])?)?;
            let cert = w.certificate.to_expression();
            Ok(Reply {
                text: format!("rho = {}\ncertificate: {cert}", w.rho),
                json: json!({ "rho": w.rho.to_string(), "displaced": w.displaced.to_string(), "certificate": cert }),
            })
        }
        Command::EpsteinComm { .. } => {
            fixed(5)?;
            let w = double_commutator_witness(
                &s.element(&a[0])?,
                &s.element(&a[1])?,
                &s.address(&a[2])?,
                &s.element(&a[3])?,
                &s.element(&a[4])?,
            )?;
            Ok(Reply {
                text: format!("rho1 = {}\nrho2 = {}", w.rho1, w.rho2),
                json: json!({ "rho1": w.rho1.to_string(), "rho2": w.rho2.to_string(), "displaced": w.displaced.to_string() }),
            })
        }
        Command::SimplicityCert { .. } => {
            fixed(4)?;
            let c = simplicity_certificate(
                &s.element(&a[0])?,
                &s.element(&a[1])?,
                &s.element(&a[2])?,
                &s.address(&a[3])?,
            )?;
            let expr = c.to_expression();
            Ok(Reply {
                text: format!("target = {}\ncertificate: {expr}", c.target),
                json: json!({ "target": c.target.to_string(), "terms": c.terms.len(), "certificate": expr }),
            })
        }
        Command::DemoNlc { .. } => {
            arity(name, a, 0, 1)?;
            let k = if a.is_empty() { 10 } else { Session::number(&a[0])? };
            let demo = nonlocal_compactness_sequence(s.ctx.tree(), k)?;
            let items: Vec<String> = (1..=k)
                .map(|i| format!("B_{i} = {}  max scale {}  {}", demo.balls[i - 1], demo.max_scale(i), demo.elements[i - 1]))
                .collect();
            Ok(Reply::lines(items))
        }
        Command::Random { .. } => {
            arity(name, a, 0, 3)?;
            let kind = a.first().map(String::as_str).unwrap_or("tp");
            let count = a.get(1).map(|x| Session::number(x)).transpose()?.unwrap_or(1);
            let size = a.get(2).map(|x| Session::number(x)).transpose()?.unwrap_or(6);
            let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
            let tree = s.ctx.tree();
            let items: Vec<String> = match kind {
                "tp" => (0..count).map(|_| random_element_with(&mut rng, tree, size).to_string()).collect(),
                "pt" => (0..count).map(|_| random_portrait(&mut rng, tree, size, 3).to_string()).collect(),
                "ray" => (0..count).map(|_| random_ray(&mut rng, tree, size, size).to_string()).collect(),
                "ht" => {
                    let forest = s.ctx.forest()?;
                    (0..count)
                        .map(|_| {
                            let e = HtElement::from_pair(random_element_with(&mut rng, forest, size)).expect("forest shape");
                            e.to_string()
                        })
                        .collect()
                }
                other => return Err(Failure::Input(format!("unknown kind `{other}`, expected tp, pt, ht or ray"))),
            };
            Ok(Reply::lines(items))
        }
    }
}

fn product_reply(items: Vec<String>) -> Reply {
    if items.is_empty() {
        return Reply { text: "1".into(), json: json!(items) };
    }
    Reply { text: items.join(" * "), json: json!(items) }
}

fn header(s: &Session) -> String {
    json!({
        "format": "neretin-json-lines",
        "version": FORMAT_VERSION,
        "q": s.ctx.q.get(),
        "r": s.ctx.r,
        "seed": s.seed,
    })
    .to_string()
}

fn json_line(cmd: &str, result: &Res<Reply>) -> String {
    match result {
        Ok(r) => json!({ "command": cmd, "ok": true, "result": r.json }).to_string(),
        Err(f) => json!({ "command": cmd, "ok": false, "code": f.code(), "error": f.message() }).to_string(),
    }
}

/// Parses `argv` (including the program name) and runs it; `stdin` is read
/// only in batch mode.
pub fn run<I, S>(argv: I, stdin: &str) -> Output
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                Output { code, stdout: rendered, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: rendered }
            };
        }
    };
    let q = match cli.q.map(Degree::new) {
        Some(Ok(q)) => q,
        Some(Err(e)) => return Output { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") },
        None => return Output { code: 1, stdout: String::new(), stderr: "error: --q is required\n".into() },
    };
    let session = Session { ctx: Context::new(q, cli.r), seed: cli.seed };
    let invocations: Vec<Vec<String>> = if cli.batch {
        stdin
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.split('|').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect())
            .collect()
    } else {
        vec![cli.command.args().to_vec()]
    };
    let mut out = Output { code: 0, stdout: String::new(), stderr: String::new() };
    if cli.format == Format::JsonLines {
        out.stdout.push_str(&header(&session));
        out.stdout.push('\n');
    }
    for args in invocations {
        let result = execute(&session, &cli.command, &args);
        if let Err(f) = &result {
            out.code = out.code.max(f.code());
        }
        match cli.format {
            Format::JsonLines => {
                out.stdout.push_str(&json_line(cli.command.name(), &result));
                out.stdout.push('\n');
            }
            Format::Text => match result {
                Ok(r) => {
                    out.stdout.push_str(&r.text);
                    out.stdout.push('\n');
                }
                Err(f) => out.stderr.push_str(&format!("error: {}\n", f.message())),
            },
        }
    }
    out
}
