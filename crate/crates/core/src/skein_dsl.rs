//! Text format for presentations, forest words, permutations and fractions.
//!
//! ```text
//! # Cleary's group
//! colors: a b
//! rel: a1 a2 = b1 b1
//! family: cleary
//! ```
//!
//! Tree words use implicit widths (`a1 b2 c1 a3`); multi-rooted forests need explicit
//! ones (`a[2,3]`). `I` is the trivial tree and `I[n]` the trivial forest on `n` roots.

use std::fmt;

use crate::error::{Error, Result};
use crate::forest::{Colour, Forest, Tree};
use crate::symmetric::Permutation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyHint {
    Free,
    Monochromatic,
    Cleary { z: Tree, n: usize },
    Higman(usize),
    ShapePreserving,
    Generic,
}

impl FamilyHint {
    pub fn tag(&self) -> &'static str {
        match self {
            FamilyHint::Free => "free",
            FamilyHint::Monochromatic => "mono",
            FamilyHint::Cleary { .. } => "cleary",
            FamilyHint::Higman(_) => "higman",
            FamilyHint::ShapePreserving => "shape",
            FamilyHint::Generic => "generic",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeinPresentation {
    colours: Vec<String>,
    relations: Vec<(Tree, Tree)>,
    family: Option<FamilyHint>,
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') && s != "I"
}

impl SkeinPresentation {
    pub fn new(
        colours: Vec<String>,
        relations: Vec<(Tree, Tree)>,
        family: Option<FamilyHint>,
    ) -> Result<SkeinPresentation> {
        if colours.is_empty() {
            return Err(Error::Invalid("a presentation needs at least one colour".into()));
        }
        for (i, c) in colours.iter().enumerate() {
            if !valid_name(c) {
                return Err(Error::Invalid(format!("bad colour name `{c}`")));
            }
            if colours[..i].contains(c) {
                return Err(Error::Invalid(format!("colour `{c}` declared twice")));
            }
        }
        for (u, v) in &relations {
            if u.leaves() != v.leaves() {
                return Err(Error::LeafCountMismatch { lhs: u.leaves(), rhs: v.leaves() });
            }
            for t in [u, v] {
                for (_, c) in t.vertices() {
                    if c.0 as usize >= colours.len() {
                        return Err(Error::UnknownColour(format!("#{}", c.0)));
                    }
                }
            }
        }
        Ok(SkeinPresentation { colours, relations, family })
    }

    pub fn colours(&self) -> &[String] {
        &self.colours
    }

    pub fn colour_count(&self) -> usize {
        self.colours.len()
    }

    pub fn relations(&self) -> &[(Tree, Tree)] {
        &self.relations
    }

    pub fn family(&self) -> Option<&FamilyHint> {
        self.family.as_ref()
    }

    pub fn with_family(mut self, family: FamilyHint) -> SkeinPresentation {
        self.family = Some(family);
        self
    }

    pub fn colour(&self, name: &str) -> Result<Colour> {
        self.colours
            .iter()
            .position(|c| c == name)
            .map(|i| Colour(i as u16))
            .ok_or_else(|| Error::UnknownColour(name.to_string()))
    }

    pub fn name(&self, c: Colour) -> &str {
        &self.colours[c.0 as usize]
    }

    pub fn tree(&self, word: &str) -> Result<Tree> {
        parse_tree_word(word, &self.colours)
    }

    pub fn forest(&self, word: &str) -> Result<Forest> {
        parse_forest_word(word, &self.colours)
    }

    pub fn show_tree(&self, t: &Tree) -> String {
        serialize_tree(t, &self.colours)
    }

    pub fn show_forest(&self, f: &Forest) -> String {
        serialize_forest(f, &self.colours)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("colors: {}\n", self.colours.join(" "));
        if self.relations.is_empty() {
            out.push_str("rel:\n");
        }
        for (u, v) in &self.relations {
            out.push_str(&format!("rel: {} = {}\n", self.show_tree(u), self.show_tree(v)));
        }
        if let Some(f) = &self.family {
            out.push_str(&format!("family: {}\n", f.tag()));
        }
        out
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
    col0: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, line: usize, col0: usize) -> Cursor<'a> {
        Cursor { text, pos: 0, line, col0 }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.line, col: self.col0 + self.pos + 1, msg: msg.into() }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.text.len()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{s}`")))
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let digits: String = self.rest().chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return Err(self.err("expected a number"));
        }
        let v = digits.parse().map_err(|_| self.err("number too large"))?;
        self.pos += digits.len();
        Ok(v)
    }

    fn peek_digit(&self) -> bool {
        self.rest().starts_with(|c: char| c.is_ascii_digit())
    }
}

enum Token {
    Caret { colour: Colour, j: usize, n: Option<usize> },
    Trivial(usize),
}

fn read_token(cur: &mut Cursor, colours: &[String]) -> Result<Token> {
    cur.skip_ws();
    let rest = cur.rest();
    // `I` only counts as the trivial tree when it is not a prefix of a declared colour use
    let best = colours
        .iter()
        .enumerate()
        .filter(|(_, c)| rest.starts_with(c.as_str()))
        .max_by_key(|(_, c)| c.len());
    match best {
        Some((i, name)) => {
            cur.pos += name.len();
            let colour = Colour(i as u16);
            if cur.rest().starts_with('[') {
                cur.pos += 1;
                let j = cur.number()?;
                cur.expect(",")?;
                let n = cur.number()?;
                cur.expect("]")?;
                Ok(Token::Caret { colour, j, n: Some(n) })
            } else if cur.peek_digit() {
                let j = cur.number()?;
                Ok(Token::Caret { colour, j, n: None })
            } else {
                Err(cur.err(format!("expected a leaf index after `{name}`")))
            }
        }
        None if rest.starts_with('I') => {
            cur.pos += 1;
            if cur.rest().starts_with('[') {
                cur.pos += 1;
                let n = cur.number()?;
                cur.expect("]")?;
                if n == 0 {
                    return Err(cur.err("a forest needs at least one root"));
                }
                Ok(Token::Trivial(n))
            } else {
                Ok(Token::Trivial(1))
            }
        }
        None => {
            let word: String =
                rest.chars().take_while(|c| c.is_ascii_alphanumeric() || *c == '_').collect();
            let word = word.trim_end_matches(|c: char| c.is_ascii_digit());
            if word.is_empty() {
                Err(cur.err("expected a colour"))
            } else {
                Err(cur.err(format!("unknown colour `{word}`")))
            }
        }
    }
}

/// Parse a forest word until the cursor hits one of `stop` (or the end).
fn forest_at(cur: &mut Cursor, colours: &[String], stop: &[char]) -> Result<Forest> {
    let mut f: Option<Forest> = None;
    loop {
        cur.skip_ws();
        if cur.pos >= cur.text.len() || cur.rest().starts_with(stop) {
            break;
        }
        let start = cur.pos;
        match read_token(cur, colours)? {
            Token::Trivial(n) => {
                if f.is_some() {
                    cur.pos = start;
                    return Err(cur.err("`I` may only stand alone"));
                }
                f = Some(Forest::identity(n)?);
            }
            Token::Caret { colour, j, n } => {
                let cur_f = match (f.take(), n) {
                    (Some(g), _) => g,
                    (None, Some(n)) if n >= 1 => Forest::identity(n)?,
                    (None, _) => Forest::identity(1)?,
                };
                let width = cur_f.leaves();
                if let Some(n) = n {
                    if n != width {
                        cur.pos = start;
                        return Err(cur.err(format!("width {n} does not match {width} leaves")));
                    }
                }
                if j == 0 || j > width {
                    cur.pos = start;
                    return Err(cur.err(format!("leaf index {j} out of range 1..={width}")));
                }
                f = Some(cur_f.graft(j, &Tree::caret(colour))?);
            }
        }
    }
    f.ok_or_else(|| cur.err("empty forest word"))
}

pub fn parse_forest_word(text: &str, colours: &[String]) -> Result<Forest> {
    let mut cur = Cursor::new(text, 1, 0);
    forest_at(&mut cur, colours, &[])
}

pub fn parse_tree_word(text: &str, colours: &[String]) -> Result<Tree> {
    let f = parse_forest_word(text, colours)?;
    match f.as_tree() {
        Some(t) => Ok(t.clone()),
        None => Err(Error::Parse { line: 1, col: 1, msg: "expected a tree, got a forest".into() }),
    }
}

fn perm_at(cur: &mut Cursor, degree: Option<usize>) -> Result<Permutation> {
    cur.skip_ws();
    let start = cur.pos;
    if cur.eat("cyc") {
        let mut cycles = Vec::new();
        while cur.eat("(") {
            let mut cyc = Vec::new();
            while !cur.eat(")") {
                cyc.push(cur.number()?);
            }
            cycles.push(cyc);
        }
        let n = match degree {
            Some(n) => n,
            None => cycles.iter().flatten().copied().max().unwrap_or(0),
        };
        return Permutation::from_cycles(n, &cycles).map_err(|e| {
            cur.pos = start;
            cur.err(e.to_string())
        });
    }
    if cur.eat("id") {
        let n = if cur.peek_digit() { Some(cur.number()?) } else { degree };
        return match n {
            Some(n) if n >= 1 => Ok(Permutation::identity(n)),
            _ => Err(cur.err("identity permutation needs a degree")),
        };
    }
    cur.expect("(")?;
    let mut images = Vec::new();
    while !cur.eat(")") {
        if cur.at_end() {
            return Err(cur.err("unterminated permutation"));
        }
        images.push(cur.number()?);
    }
    Permutation::new(images).map_err(|e| {
        cur.pos = start;
        cur.err(e.to_string())
    })
}

pub fn parse_permutation(text: &str) -> Result<Permutation> {
    let mut cur = Cursor::new(text, 1, 0);
    let p = perm_at(&mut cur, None)?;
    if !cur.at_end() {
        return Err(cur.err("trailing input"));
    }
    Ok(p)
}

/// Parse `frac(t ; perm ; s)` into its raw triple.
pub fn parse_fraction(text: &str, colours: &[String]) -> Result<(Tree, Permutation, Tree)> {
    let mut cur = Cursor::new(text, 1, 0);
    cur.expect("frac(")?;
    let t_start = cur.pos;
    let t = forest_at(&mut cur, colours, &[';'])?;
    cur.expect(";")?;
    let perm_pos = cur.pos;
    // the perm is parsed after the trees so that `id` can take its degree from them
    let mut depth = 0usize;
    let mut end = perm_pos;
    for (i, ch) in text[perm_pos..].char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ';' if depth == 0 => {
                end = perm_pos + i;
                break;
            }
            _ => {}
        }
    }
    if end == perm_pos {
        return Err(cur.err("expected `;` after the permutation"));
    }
    cur.pos = end + 1;
    let s = forest_at(&mut cur, colours, &[')'])?;
    cur.expect(")")?;
    if !cur.at_end() {
        return Err(cur.err("trailing input"));
    }
    let (t, s) = match (t.as_tree(), s.as_tree()) {
        (Some(t), Some(s)) => (t.clone(), s.clone()),
        _ => {
            cur.pos = t_start;
            return Err(cur.err("fractions are built from trees"));
        }
    };
    let mut pc = Cursor { text: &text[..end], pos: perm_pos, line: 1, col0: 0 };
    let perm = perm_at(&mut pc, Some(t.leaves()))?;
    if !pc.at_end() {
        return Err(pc.err("trailing input in permutation"));
    }
    if perm.degree() != t.leaves() || t.leaves() != s.leaves() {
        return Err(Error::LeafCountMismatch { lhs: t.leaves(), rhs: s.leaves() });
    }
    Ok((t, perm, s))
}

fn family_from_tag(
    tag: &str,
    colours: &[String],
    relations: &[(Tree, Tree)],
) -> std::result::Result<FamilyHint, String> {
    let mut parts = tag.split(':');
    let head = parts.next().unwrap_or("");
    match head {
        "free" => Ok(FamilyHint::Free),
        "mono" | "monochromatic" => Ok(FamilyHint::Monochromatic),
        "shape" => Ok(FamilyHint::ShapePreserving),
        "generic" => Ok(FamilyHint::Generic),
        "higman" => Ok(FamilyHint::Higman(colours.len() + 1)),
        "cleary" => {
            let (x, _) = relations.first().ok_or("cleary family needs its relation")?;
            let z = x.right().ok_or("cleary relation has a trivial side")?.clone();
            Ok(FamilyHint::Cleary { n: z.leaves(), z })
        }
        _ => Err(format!("unknown family `{tag}`")),
    }
}

pub fn parse_presentation(text: &str) -> Result<SkeinPresentation> {
    let mut colours: Option<Vec<String>> = None;
    let mut relations = Vec::new();
    let mut family_tag: Option<(usize, String)> = None;
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let indent = line.len() - line.trim_start().len();
        let body = line.trim_start();
        let perr = |col: usize, msg: String| Error::Parse { line: line_no, col, msg };
        if let Some(rest) = body.strip_prefix("colors:").or_else(|| body.strip_prefix("colours:")) {
            if colours.is_some() {
                return Err(perr(indent + 1, "colours declared twice".into()));
            }
            let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if names.is_empty() {
                return Err(perr(indent + 1, "no colours declared".into()));
            }
            for (i, n) in names.iter().enumerate() {
                if !valid_name(n) || names[..i].contains(n) {
                    return Err(perr(indent + 1, format!("bad or repeated colour `{n}`")));
                }
            }
            colours = Some(names);
        } else if let Some(rest) = body.strip_prefix("rel:") {
            let cols = colours
                .as_ref()
                .ok_or_else(|| perr(indent + 1, "relation before colour declaration".into()))?;
            if rest.trim().is_empty() {
                continue;
            }
            let off = indent + 4;
            let eq = rest.find('=').ok_or_else(|| perr(off + 1, "expected `=`".into()))?;
            let mut lc = Cursor::new(&rest[..eq], line_no, off);
            let u = forest_at(&mut lc, cols, &[])?;
            let mut rc = Cursor::new(&rest[eq + 1..], line_no, off + eq + 1);
            let v = forest_at(&mut rc, cols, &[])?;
            let (u, v) = match (u.as_tree(), v.as_tree()) {
                (Some(u), Some(v)) => (u.clone(), v.clone()),
                _ => return Err(perr(off + 1, "relation sides must be trees".into())),
            };
            if u.leaves() != v.leaves() {
                return Err(Error::LeafCountMismatch { lhs: u.leaves(), rhs: v.leaves() });
            }
            relations.push((u, v));
        } else if let Some(rest) = body.strip_prefix("family:") {
            family_tag = Some((line_no, rest.trim().to_string()));
        } else {
            return Err(perr(indent + 1, format!("unknown declaration `{}`", body.trim())));
        }
    }
    let colours =
        colours.ok_or(Error::Parse { line: 1, col: 1, msg: "missing colour declaration".into() })?;
    let family = match family_tag {
        None => None,
        Some((line, tag)) => Some(
            family_from_tag(&tag, &colours, &relations)
                .map_err(|msg| Error::Parse { line, col: 1, msg })?,
        ),
    };
    SkeinPresentation::new(colours, relations, family)
}

pub fn serialize_tree(t: &Tree, colours: &[String]) -> String {
    if t.is_leaf() {
        return "I".to_string();
    }
    t.preorder_factors()
        .iter()
        .map(|(c, j)| format!("{}{}", colours[c.0 as usize], j))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn serialize_forest(f: &Forest, colours: &[String]) -> String {
    if let Some(t) = f.as_tree() {
        return serialize_tree(t, colours);
    }
    if f.is_trivial() {
        return format!("I[{}]", f.roots());
    }
    let mut tokens = Vec::new();
    let mut width = f.roots();
    let mut offset = 0;
    for t in f.trees() {
        for (c, j) in t.preorder_factors() {
            tokens.push(format!("{}[{},{}]", colours[c.0 as usize], offset + j, width));
            width += 1;
        }
        offset += t.leaves();
    }
    tokens.join(" ")
}

pub fn serialize_permutation(p: &Permutation) -> String {
    let parts: Vec<String> = p.images().iter().map(|i| i.to_string()).collect();
    format!("({})", parts.join(" "))
}

pub fn serialize_fraction(t: &Tree, p: &Permutation, s: &Tree, colours: &[String]) -> String {
    format!(
        "frac({} ; {} ; {})",
        serialize_tree(t, colours),
        serialize_permutation(p),
        serialize_tree(s, colours)
    )
}

impl fmt::Display for SkeinPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .relations
            .iter()
            .map(|(u, v)| format!("{} = {}", self.show_tree(u), self.show_tree(v)))
            .collect();
        write!(f, "FS<{} | {}>", self.colours.join(","), rels.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Vec<String> {
        vec!["a".into(), "b".into(), "c".into()]
    }

    #[test]
    fn presentation_basic() {
        let p = parse_presentation("colors: a b\nrel: a1 a2 = b1 b1").unwrap();
        assert_eq!(p.colours(), &["a", "b"]);
        assert_eq!(p.relations().len(), 1);
        let free = parse_presentation("colors: a\nrel:").unwrap();
        assert!(free.relations().is_empty());
        let e = parse_presentation("colors: a b\nrel: a1 = b1 b1").unwrap_err();
        assert_eq!(e, Error::LeafCountMismatch { lhs: 2, rhs: 3 });
    }

    #[test]
    fn parse_errors_have_positions() {
        match parse_presentation("colors: a b\nrel: a1 x2 = b1 b1") {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (2, 9)),
            other => panic!("{other:?}"),
        }
        match parse_presentation("colors: a\nrel: a1 a3 = a1 a1") {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (2, 9)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn forest_words() {
        let c = abc();
        let t = parse_forest_word("a1 b2 c1 a3", &c).unwrap();
        assert_eq!(t.leaves(), 5);
        assert_eq!(parse_forest_word("a1", &c).unwrap(), Forest::from_tree(Tree::caret(Colour(0))));
        let e = parse_forest_word("a[2,3]", &c).unwrap();
        assert_eq!(e, Forest::elementary(Colour(0), 2, 3).unwrap());
        assert_eq!(parse_forest_word("a1a1a3", &c).unwrap(), parse_forest_word("a1 a1 a3", &c).unwrap());
        assert!(parse_forest_word("a3", &c).is_err());
        assert_eq!(parse_forest_word("I[2]", &c).unwrap(), Forest::identity(2).unwrap());
    }

    #[test]
    fn round_trips() {
        let c = abc();
        let t = parse_tree_word("a1 b2 c1 a3", &c).unwrap();
        assert_eq!(serialize_tree(&t, &c), "a1 c1 b3 a3");
        assert_eq!(parse_tree_word(&serialize_tree(&t, &c), &c).unwrap(), t);
        let f = Forest::new(vec![Tree::caret(Colour(1)), Tree::leaf(), t.clone()]).unwrap();
        assert_eq!(parse_forest_word(&serialize_forest(&f, &c), &c).unwrap(), f);
        assert_eq!(serialize_tree(&Tree::caret(Colour(0)), &c), "a1");
        assert_eq!(serialize_permutation(&Permutation::identity(3)), "(1 2 3)");
    }

    #[test]
    fn fractions() {
        let c = abc();
        let (t, p, s) = parse_fraction("frac(a1 ; (1 2) ; a1)", &c).unwrap();
        assert_eq!(serialize_fraction(&t, &p, &s, &c), "frac(a1 ; (1 2) ; a1)");
        let (_, p, _) = parse_fraction("frac(a1 a2 ; id ; b1 b1)", &c).unwrap();
        assert!(p.is_identity() && p.degree() == 3);
        let (_, p, _) = parse_fraction("frac(a1 ; cyc(1 2) ; b1)", &c).unwrap();
        assert_eq!(p.images(), &[2, 1]);
        assert!(parse_fraction("frac(a1 ; (1 2 3) ; a1)", &c).is_err());
    }

    #[test]
    fn permutations() {
        assert_eq!(parse_permutation("cyc(1 2 3)").unwrap().images(), &[2, 3, 1]);
        assert_eq!(parse_permutation("id4").unwrap(), Permutation::identity(4));
        assert_eq!(parse_permutation("(2 1)").unwrap().images(), &[2, 1]);
        assert!(parse_permutation("(1 1)").is_err());
    }

    #[test]
    fn family_line() {
        let p = parse_presentation("colors: a b\nrel: a1 a2 = b1 b1\nfamily: cleary\n").unwrap();
        match p.family() {
            Some(FamilyHint::Cleary { n, z }) => assert_eq!((*n, z.carets()), (2, 1)),
            other => panic!("{other:?}"),
        }
        assert_eq!(parse_presentation(&p.to_text()).unwrap(), p);
    }
}
