//! The `fskein` command line.

use std::io::{Read, Write};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::abelian::abelianization_tv_with_base;
use crate::actions::{show_path, PointedTree, QPoint, QSpace};
use crate::error::{Error, Result};
use crate::families::{cleary, higman, mono};
use crate::forest::{right_vine, Tree};
use crate::fraction::{check_relation, evaluate_word, parse_word, random_element, GroupElement};
use crate::germ::End;
use crate::kernel::{candidates, kernel_witness_search, QuotientKind};
use crate::rewriting::{
    left_cancellativity_scan, quotient_morphism_check, Certificate, Engine, QuotientCheck, Separation, Verdict,
};
use crate::skein_dsl::{parse_fraction, parse_presentation, SkeinPresentation};
use crate::symmetric::TypeTag;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "fskein", version, about = "Forest-skein categories and their fraction groups")]
pub struct Cli {
    #[command(flatten)]
    pub opts: Options,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Args, Debug, Clone)]
pub struct Options {
    /// free:k, cleary:n[:z], mirror-cleary:n[:z], higman:n or mono:a=a1a1,b=b1b2
    #[arg(long, global = true)]
    pub preset: Option<String>,
    /// Presentation file, `-` for stdin
    #[arg(long, global = true)]
    pub presentation: Option<String>,
    /// Search budget (nodes) for inexact engines
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long = "base-colour", global = true)]
    pub base_colour: Option<String>,
    #[arg(long, global = true, default_value = "o")]
    pub end: End,
    /// key=value records instead of text
    #[arg(long, global = true)]
    pub machine: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Verb {
    /// Show the presentation, or normalize an element
    Parse { element: Option<String> },
    Multiply {
        #[arg(required = true, num_args = 1..)]
        elements: Vec<String>,
    },
    Inverse { element: String },
    IsIdentity { element: String },
    CheckRelation { lhs: String, rhs: String },
    /// Apply α of an element, or β of a pointed tree with --beta, to a point TREE@j
    Act {
        element: String,
        point: String,
        #[arg(long)]
        beta: bool,
    },
    /// Cones on which the element acts by prefix replacement
    Support { element: String },
    InK { element: String },
    Germ,
    Abelianize,
    Goodify { tree: String },
    Snf { element: String },
    /// Tree word to n-ary word, or an n-ary word `z1 z3 …` back to a forest
    Phi { word: String },
    ScanCancel,
    ScanQuotient,
    KernelWitness,
}

/// The outcome of one command: a headline result and further records.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub verb: String,
    pub result: String,
    pub details: Vec<(String, String)>,
    pub engine: Option<(String, usize, String)>,
    pub code: i32,
}

impl Report {
    fn new(verb: &str, result: impl Into<String>, engine: &Engine) -> Report {
        Report {
            verb: verb.into(),
            result: result.into(),
            details: Vec::new(),
            engine: Some((
                engine.strategy().name().into(),
                engine.budget(),
                engine.presentation().name(engine.base()).into(),
            )),
            code: EXIT_OK,
        }
    }

    fn detail(mut self, key: &str, value: impl Into<String>) -> Report {
        self.details.push((key.into(), value.into()));
        self
    }

    fn verdict(verb: &str, v: &Verdict, engine: &Engine) -> Report {
        let mut r = Report::new(verb, v.word(), engine).detail("evidence", evidence(v));
        if v.is_unknown() {
            r.code = EXIT_UNKNOWN;
        }
        r
    }

    pub fn render(&self, machine: bool) -> String {
        let mut out = String::new();
        if machine {
            out += &format!("verb={}\nresult={}\n", self.verb, self.result);
            for (k, v) in &self.details {
                out += &format!("{k}={v}\n");
            }
            if let Some((s, b, c)) = &self.engine {
                out += &format!("engine={s}\nbudget={b}\nbase={c}\n");
            }
            out += &format!("exit={}\n", self.code);
        } else {
            out += &format!("{}\n", self.result);
            for (k, v) in &self.details {
                out += &format!("  {k}: {v}\n");
            }
            if let Some((s, b, c)) = &self.engine {
                out += &format!("  [engine={s} budget={b} base={c}]\n");
            }
        }
        out
    }
}

pub fn evidence(v: &Verdict) -> String {
    match v {
        Verdict::Equal(Certificate::Path(p)) => format!("rewrite path of length {}", p.len()),
        Verdict::Equal(Certificate::Grown { path, .. }) => format!("rewrite path of length {} after growth", path.len()),
        Verdict::Equal(Certificate::NormalForm(s)) => s.clone(),
        Verdict::Distinct(Separation::LeafCount(a, b)) => format!("leaf counts {a} and {b}"),
        Verdict::Distinct(Separation::RootCount(a, b)) => format!("root counts {a} and {b}"),
        Verdict::Distinct(Separation::ColourClass(c)) => format!("colour class {c:?}"),
        Verdict::Distinct(Separation::Exhausted { class_size }) => format!("class of size {class_size} exhausted"),
        Verdict::Distinct(Separation::NormalForm(s)) => s.clone(),
        Verdict::Distinct(Separation::Permutation) => "permutations differ".into(),
        Verdict::Unknown(s) => s.clone(),
    }
}

fn letters(k: usize) -> Vec<String> {
    (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

fn number(s: &str, what: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::Invalid(format!("{what} must be a number, got {s:?}")))
}

fn cleary_args(rest: &str) -> Result<(Tree, usize)> {
    let (n, z) = match rest.split_once(':') {
        Some((n, z)) => (number(n, "n")?, Some(z)),
        None => (number(rest, "n")?, None),
    };
    if n < 2 {
        return Err(Error::Invalid("cleary needs n >= 2".into()));
    }
    let z = match z {
        Some(w) => SkeinPresentation::new(vec!["a".into(), "b".into()], Vec::new(), None)?.tree(w)?,
        None => right_vine(cleary::A, n - 1),
    };
    Ok((z, n))
}

/// Build a presentation from a preset name.
pub fn preset(spec: &str) -> Result<SkeinPresentation> {
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    match name {
        "free" => {
            let k = if rest.is_empty() { 1 } else { number(rest, "k")? };
            if k == 0 || k > 26 {
                return Err(Error::Invalid("free:k needs 1 <= k <= 26".into()));
            }
            SkeinPresentation::new(letters(k), Vec::new(), None)
        }
        "cleary" => {
            let (z, n) = cleary_args(rest)?;
            cleary::cleary_category(&z, n)
        }
        "mirror-cleary" => {
            let (z, n) = cleary_args(rest)?;
            cleary::mirror_cleary_category(&z, n)
        }
        "higman" => higman::higman_category(number(rest, "n")?),
        "mono" => mono::parse_spec(rest),
        _ => Err(Error::Invalid(format!("unknown preset {name:?}"))),
    }
}

fn load(opts: &Options) -> Result<Engine> {
    let p = match (&opts.preset, &opts.presentation) {
        (Some(_), Some(_)) => return Err(Error::Invalid("give either --preset or --presentation".into())),
        (Some(s), None) => preset(s)?,
        (None, Some(path)) => {
            let mut text = String::new();
            if path == "-" {
                std::io::stdin().read_to_string(&mut text).map_err(|e| Error::Invalid(e.to_string()))?;
            } else {
                text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{path}: {e}")))?;
            }
            parse_presentation(&text)?
        }
        (None, None) => preset("free:1")?,
    };
    let mut engine = Engine::auto(p);
    if let Some(b) = opts.budget {
        engine = engine.with_budget(b);
    }
    if let Some(c) = &opts.base_colour {
        let c = engine.presentation().colour(c)?;
        engine = engine.with_base(c)?;
    }
    Ok(engine)
}

/// An element given as `frac(t ; π ; s)`, a generator word, or `random[:carets]`.
pub fn element(text: &str, engine: &Arc<Engine>, seed: u64) -> Result<GroupElement> {
    let text = text.trim();
    if text.starts_with("frac(") {
        let (t, perm, s) = parse_fraction(text, engine.presentation().colours())?;
        return GroupElement::from_parts(t, perm, s, engine.clone());
    }
    if let Some(rest) = text.strip_prefix("random") {
        let carets = match rest.strip_prefix(':') {
            Some(k) => number(k, "carets")?,
            None if rest.is_empty() => 4,
            None => return Err(Error::Invalid(format!("bad element {text:?}"))),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        return Ok(random_element(&mut rng, engine, carets, TypeTag::F));
    }
    evaluate_word(&parse_word(text, engine)?, engine)
}

/// A pointed tree `TREE@j`; `o` is the unit.
pub fn pointed(text: &str, p: &SkeinPresentation) -> Result<PointedTree> {
    let text = text.trim();
    if text == "o" {
        return Ok(PointedTree::unit());
    }
    let (t, j) = text.rsplit_once('@').ok_or_else(|| Error::Invalid(format!("expected TREE@j, got {text:?}")))?;
    PointedTree::new(p.tree(t.trim())?, number(j.trim(), "leaf")?)
}

fn show_point(x: &QPoint, p: &SkeinPresentation) -> String {
    let pt = x.pointed();
    format!("{}@{}", p.show_tree(&pt.tree), pt.leaf)
}

pub fn execute(verb: &Verb, opts: &Options) -> Result<Report> {
    let engine = Arc::new(load(opts)?);
    let p = engine.presentation().clone();
    let el = |s: &str| element(s, &engine, opts.seed);
    let show = |g: &GroupElement| g.to_string();
    Ok(match verb {
        Verb::Parse { element: None } => Report::new("parse", p.to_text().trim_end().replace('\n', "; "), &engine)
            .detail("colours", p.colours().join(" "))
            .detail("relations", p.relations().len().to_string()),
        Verb::Parse { element: Some(e) } => {
            let g = el(e)?;
            Report::new("parse", show(&g), &engine)
                .detail("tag", format!("{:?}", g.tag()))
                .detail("leaves", g.t().leaves().to_string())
        }
        Verb::Multiply { elements } => {
            let mut acc = el(&elements[0])?;
            for e in &elements[1..] {
                acc = acc.multiply(&el(e)?)?;
            }
            Report::new("multiply", show(&acc), &engine)
        }
        Verb::Inverse { element } => Report::new("inverse", show(&el(element)?.inverse()), &engine),
        Verb::IsIdentity { element } => Report::verdict("is-identity", &el(element)?.is_identity(), &engine),
        Verb::CheckRelation { lhs, rhs } => Report::verdict("check-relation", &check_relation(lhs, rhs, &engine)?, &engine),
        Verb::Act { element, point, beta } => {
            let space = QSpace::new(engine.clone());
            let x = QPoint::new(&pointed(point, &p)?.tree, pointed(point, &p)?.leaf)?;
            let y = if *beta { space.beta(&pointed(element, &p)?, &x) } else { space.alpha(&el(element)?, &x)? };
            Report::new("act", show_point(&y, &p), &engine)
                .detail("path", show_path(&y.path, p.colours()))
                .detail("from", show_point(&x, &p))
        }
        Verb::Support { element } => {
            let space = QSpace::new(engine.clone());
            let cones = space.support_cones(&el(element)?, opts.depth.unwrap_or(2))?;
            let mut r = Report::new("support", cones.len().to_string(), &engine);
            for c in &cones {
                r = r.detail("cone", show_path(&c.path, p.colours()));
            }
            r
        }
        Verb::InK { element } => {
            let space = QSpace::new(engine.clone());
            let g = el(element)?;
            let (o, w) = (space.in_k_o(&g)?, space.in_k_omega(&g)?);
            let v = space.in_k(&g)?;
            let mut r = Report::verdict("in-k", &v, &engine);
            r.details = vec![("o".into(), o.word().into()), ("omega".into(), w.word().into())];
            r
        }
        Verb::Germ => {
            let g = QSpace::new(engine.clone()).germ(opts.end);
            Report::new("germ", g.to_string(), &engine).detail("abelianization", g.abelianization().to_string())
        }
        Verb::Abelianize => {
            let a = abelianization_tv_with_base(&p, engine.base())?;
            Report::new("abelianize", a.to_string(), &engine)
        }
        Verb::Goodify { tree } => {
            let (f, g) = cleary::goodify(&engine, &p.tree(tree)?)?;
            Report::new("goodify", p.show_tree(&g), &engine).detail("growth", p.show_forest(&f))
        }
        Verb::Snf { element } => {
            let g = el(element)?;
            if g.tag() != TypeTag::F {
                return Err(Error::Invalid("semi-normal forms are for tree pairs".into()));
            }
            let snf = cleary::semi_normal_form(&engine, g.t(), g.s())?;
            let id = GroupElement::tree_pair(snf.good.clone(), snf.a_tree.clone(), engine.clone())?;
            Report::new("snf", show(&id), &engine)
                .detail("good", p.show_tree(&snf.good))
                .detail("a_tree", p.show_tree(&snf.a_tree))
                .detail("growth", p.show_forest(&snf.growth))
        }
        Verb::Phi { word } => {
            let n = match engine.strategy() {
                crate::rewriting::Strategy::NAry { n } => *n,
                _ => return Err(Error::Invalid("phi needs a higman:n presentation".into())),
            };
            if word.trim_start().starts_with('z') {
                let ks = word
                    .split_whitespace()
                    .map(|z| number(z.trim_start_matches('z'), "n-ary generator"))
                    .collect::<Result<Vec<_>>>()?;
                let gens = higman::psi(n, &ks)?;
                let roots = gens.iter().map(|g| g.1).max().unwrap_or(1);
                let f = higman::forest_from_gens(&gens, roots)?;
                Report::new("phi", p.show_forest(&f), &engine).detail("direction", "psi")
            } else {
                let t = p.tree(word)?;
                Report::new("phi", higman::tree_to_nary(n, &t).to_string(), &engine).detail("direction", "phi")
            }
        }
        Verb::ScanCancel => match left_cancellativity_scan(&engine, opts.depth.unwrap_or(4))? {
            None => Report::new("scan-cancel", "pass", &engine),
            Some(f) => Report::new("scan-cancel", "counterexample", &engine)
                .detail("tree", p.show_tree(&f.t))
                .detail("left", p.show_forest(&f.h))
                .detail("right", p.show_forest(&f.h2)),
        },
        Verb::ScanQuotient => {
            let cands = candidates(&p);
            let mut r = Report::new("scan-quotient", cands.len().to_string(), &engine);
            for c in cands {
                let tgt = Engine::auto(c.quotient.clone()).with_budget(engine.budget());
                let check = quotient_morphism_check(&p, &tgt, &c.gamma)?;
                let status = match check {
                    QuotientCheck::Verified => "verified".to_string(),
                    QuotientCheck::Refuted { relation } => format!("refuted at relation {relation}"),
                    QuotientCheck::Unknown { relation } => format!("unknown at relation {relation}"),
                };
                r = r.detail("quotient", format!("{} [{}]", c.quotient.to_text().trim_end().replace('\n', "; "), status));
            }
            r
        }
        Verb::KernelWitness => {
            match kernel_witness_search(&p, opts.budget.unwrap_or(engine.budget()))? {
                None => Report::new("kernel-witness", "none", &engine),
                Some(w) => {
                    let kind = match &w.kind {
                        QuotientKind::ColourCollapse => "colour collapse".to_string(),
                        QuotientKind::CellCollapse { relation, cells } => format!(
                            "cell collapse of relation {relation}: {} ~ {}",
                            p.show_tree(&cells.0),
                            p.show_tree(&cells.1)
                        ),
                    };
                    Report::new("kernel-witness", w.element.to_string(), &engine)
                        .detail("quotient", kind)
                        .detail("class", format!("{:?}", w.class))
                        .detail("fixed_points", w.samples.to_string())
                }
            }
        }
    })
}

/// Run with the given arguments (including the program name); returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli.verb, &cli.opts) {
        Ok(r) => {
            let _ = out.write_all(r.render(cli.opts.machine).as_bytes());
            r.code
        }
        Err(e) => {
            if cli.opts.machine {
                let _ = out.write_all(format!("result=error\nerror={e}\nexit={EXIT_DOMAIN}\n").as_bytes());
            } else {
                let _ = writeln!(err, "error: {e}");
            }
            EXIT_DOMAIN
        }
    }
}
