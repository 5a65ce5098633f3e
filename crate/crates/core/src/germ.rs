//! Germ presentations at the endpoints and a partial word problem for the resulting groups.

use std::fmt;

use crate::abelian::{AbelianGroup, Cokernel, IntMatrix};
use crate::forest::{Colour, Tree};
use crate::rewriting::{Certificate, Separation, Verdict};
use crate::skein_dsl::SkeinPresentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum End {
    /// The minimum, reached through first leaves.
    O,
    /// The maximum, reached through last leaves.
    Omega,
}

impl End {
    pub fn branch(self, t: &Tree) -> Vec<Colour> {
        match self {
            End::O => t.first_branch(),
            End::Omega => t.last_branch(),
        }
    }
}

impl std::str::FromStr for End {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<End, String> {
        match s {
            "o" => Ok(End::O),
            "omega" | "ω" | "w" => Ok(End::Omega),
            _ => Err(format!("unknown end {s:?}; expected o or omega")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GermPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<(Vec<Colour>, Vec<Colour>)>,
}

/// `Gr<S | prune(u) = prune(v)>`, one relator per skein relation.
pub fn germ_presentation(p: &SkeinPresentation, end: End) -> GermPresentation {
    GermPresentation {
        generators: p.colours().to_vec(),
        relators: p.relations().iter().map(|(u, v)| (end.branch(u), end.branch(v))).collect(),
    }
}

impl GermPresentation {
    fn show(&self, w: &[Colour]) -> String {
        if w.is_empty() {
            return "e".into();
        }
        w.iter().map(|c| self.generators[c.0 as usize].as_str()).collect::<Vec<_>>().join(" ")
    }

    pub fn abelianization(&self) -> AbelianGroup {
        let k = self.generators.len();
        let rows: Vec<Vec<i128>> = self.relators.iter().map(|(u, v)| abelian_row(k, &letters(u, v))).collect();
        let m = if rows.is_empty() { IntMatrix::zero(0, k) } else { IntMatrix::new(k, rows) };
        Cokernel::new(&m).group()
    }

    fn group(&self) -> FpGroup {
        let relators = self.relators.iter().map(|(u, v)| letters(u, v)).collect();
        FpGroup::new(self.generators.len(), relators)
    }

    /// Decide `u = v` in the germ group.
    pub fn word_problem(&self, u: &[Colour], v: &[Colour]) -> Verdict {
        self.group().decide(&letters(u, v))
    }
}

impl fmt::Display for GermPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gr<{}", self.generators.join(","))?;
        if !self.relators.is_empty() {
            let rels: Vec<String> =
                self.relators.iter().map(|(u, v)| format!("{} = {}", self.show(u), self.show(v))).collect();
            write!(f, " | {}", rels.join(", "))?;
        }
        write!(f, ">")
    }
}

/// Generator `i` is the letter `i + 1`, its inverse `−(i + 1)`.
type Word = Vec<i32>;

fn letters(u: &[Colour], v: &[Colour]) -> Word {
    let mut w: Word = u.iter().map(|c| c.0 as i32 + 1).collect();
    w.extend(v.iter().rev().map(|c| -(c.0 as i32 + 1)));
    free_reduce(&w)
}

fn abelian_row(k: usize, w: &[i32]) -> Vec<i128> {
    let mut row = vec![0i128; k];
    for &x in w {
        row[x.unsigned_abs() as usize - 1] += i128::from(x.signum());
    }
    row
}

fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

fn cyclic_reduce(w: &[i32]) -> Word {
    let mut w = free_reduce(w);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.pop();
        w.remove(0);
    }
    w
}

fn invert(w: &[i32]) -> Word {
    w.iter().rev().map(|x| -x).collect()
}

/// A finitely presented group, with Tietze eliminations applied eagerly.
#[derive(Clone, Debug)]
struct FpGroup {
    gens: usize,
    relators: Vec<Word>,
    /// `Some(w)` when the generator was eliminated as `w`.
    solved: Vec<Option<Word>>,
}

impl FpGroup {
    fn new(gens: usize, relators: Vec<Word>) -> FpGroup {
        let mut g = FpGroup { gens, relators: Vec::new(), solved: vec![None; gens] };
        g.relators = relators.iter().map(|r| cyclic_reduce(r)).filter(|r| !r.is_empty()).collect();
        g.eliminate();
        g
    }

    fn substitute(&self, w: &[i32]) -> Word {
        let mut out = Vec::new();
        for &x in w {
            match &self.solved[x.unsigned_abs() as usize - 1] {
                Some(s) if x > 0 => out.extend(self.substitute(s)),
                Some(s) => out.extend(invert(&self.substitute(s))),
                None => out.push(x),
            }
        }
        free_reduce(&out)
    }

    fn eliminate(&mut self) {
        loop {
            let found = self.relators.iter().enumerate().find_map(|(i, r)| {
                (1..=self.gens as i32)
                    .find(|g| r.iter().filter(|x| x.abs() == *g).count() == 1)
                    .map(|g| (i, g))
            });
            let Some((i, g)) = found else { break };
            let r = self.relators.remove(i);
            let pos = r.iter().position(|x| x.abs() == g).expect("letter occurs");
            // r = A x^e B = 1, so x^e = A⁻¹ B⁻¹
            let rest: Word = invert(&[&r[pos + 1..], &r[..pos]].concat());
            let value = if r[pos] > 0 { rest } else { invert(&rest) };
            self.solved[g as usize - 1] = Some(value);
            let rels = std::mem::take(&mut self.relators);
            let mut seen: Vec<Word> = Vec::new();
            for r in rels {
                let r = cyclic_reduce(&self.substitute(&r));
                if !r.is_empty() && !seen.iter().any(|s| same_relator(s, &r)) {
                    seen.push(r);
                }
            }
            self.relators = seen;
        }
    }

    fn live(&self) -> Vec<i32> {
        (1..=self.gens as i32).filter(|g| self.solved[*g as usize - 1].is_none()).collect()
    }

    fn decide(&self, w: &[i32]) -> Verdict {
        let w = self.substitute(w);
        if w.is_empty() {
            return Verdict::Equal(Certificate::NormalForm("freely trivial".into()));
        }
        if self.relators.is_empty() {
            return Verdict::Distinct(Separation::NormalForm("nontrivial reduced word in a free group".into()));
        }
        let rows: Vec<Vec<i128>> = self.relators.iter().map(|r| abelian_row(self.gens, r)).collect();
        let c = Cokernel::new(&IntMatrix::new(self.gens, rows));
        let image: Vec<i64> = abelian_row(self.gens, &w).iter().map(|x| *x as i64).collect();
        // eliminated generators never occur in `w` or the relators
        if !c.is_zero(&image) {
            return Verdict::Distinct(Separation::ColourClass(c.class(&image)));
        }
        if let Some(v) = self.torus_normal_form(&w) {
            return v;
        }
        Verdict::Unknown("germ word problem not resolved for this presentation".into())
    }

    /// Word problem in `<x, y | x^p = y^q>` when that is all that is left.
    fn torus_normal_form(&self, w: &[i32]) -> Option<Verdict> {
        let live = self.live();
        if live.len() != 2 || self.relators.len() != 1 {
            return None;
        }
        let r = &self.relators[0];
        let syll = syllables(r);
        // cyclically reduced, so either two syllables x^p y^s or fewer
        if syll.len() != 2 || syll[0].0 == syll[1].0 {
            return None;
        }
        let (x, p) = syll[0];
        let (_, s) = syll[1];
        // x^p y^s = 1 ⇒ the central element z = x^p = y^{-s}
        let mods = |g: i32| if g == x { p } else { -s };
        let mut stack: Vec<(i32, i64)> = Vec::new();
        let mut z: i64 = 0;
        for (g, e) in syllables(w) {
            let mut cur = (g, e);
            loop {
                if let Some(top) = stack.last() {
                    if top.0 == cur.0 {
                        cur.1 += top.1;
                        stack.pop();
                    }
                }
                let m = mods(cur.0);
                let k = cur.1.div_euclid(m.abs());
                z += k * m.signum();
                cur.1 = cur.1.rem_euclid(m.abs());
                if cur.1 != 0 {
                    stack.push(cur);
                    break;
                }
                // the syllable vanished; the neighbours may merge
                match stack.pop() {
                    Some(prev) => cur = prev,
                    None => break,
                }
            }
        }
        Some(if stack.is_empty() && z == 0 {
            Verdict::Equal(Certificate::NormalForm("amalgam normal form is trivial".into()))
        } else {
            Verdict::Distinct(Separation::NormalForm(format!("amalgam normal form has {} syllables", stack.len())))
        })
    }
}

fn syllables(w: &[i32]) -> Vec<(i32, i64)> {
    let mut out: Vec<(i32, i64)> = Vec::new();
    for &x in w {
        let (g, e) = (x.abs(), i64::from(x.signum()));
        match out.last_mut() {
            Some((h, f)) if *h == g => *f += e,
            _ => out.push((g, e)),
        }
    }
    out.retain(|(_, e)| *e != 0);
    out
}

fn same_relator(a: &[i32], b: &[i32]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let rotations = |w: &[i32]| (0..w.len()).map(|i| [&w[i..], &w[..i]].concat()).collect::<Vec<_>>();
    let binv = invert(b);
    rotations(a).iter().any(|r| r == b || *r == binv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skein_dsl::parse_presentation;

    fn germ(text: &str, end: End) -> GermPresentation {
        germ_presentation(&parse_presentation(text).unwrap(), end)
    }

    #[test]
    fn mirror_cleary() {
        let o = germ("colors: a b\nrel: a1 a1 = b1 b2", End::O);
        assert_eq!(o.to_string(), "Gr<a,b | a a = b>");
        assert_eq!(o.abelianization().to_string(), "Z");
        let w = germ("colors: a b\nrel: a1 a1 = b1 b2", End::Omega);
        assert_eq!(w.to_string(), "Gr<a,b | a = b b>");
        let (a, b) = (Colour(0), Colour(1));
        assert!(o.word_problem(&[a, a], &[b]).is_equal());
        assert!(o.word_problem(&[a, b], &[b, a]).is_equal());
        assert!(o.word_problem(&[a], &[b]).is_distinct());
    }

    #[test]
    fn torus_knot() {
        let w = germ("colors: a b\nrel: a1 a1 a3 = b1 b2 b3", End::Omega);
        assert_eq!(w.to_string(), "Gr<a,b | a a = b b b>");
        let (a, b) = (Colour(0), Colour(1));
        // a a is central
        assert!(w.word_problem(&[a, a, b], &[b, a, a]).is_equal());
        // a b a⁻¹ b⁻¹ has trivial abelian image but is not trivial
        assert!(w.word_problem(&[a, b], &[b, a]).is_distinct());
        assert_eq!(w.abelianization().to_string(), "Z");
    }

    #[test]
    fn free_and_higman() {
        let f = germ("colors: a\nrel:", End::O);
        assert_eq!(f.to_string(), "Gr<a>");
        assert!(f.word_problem(&[Colour(0)], &[]).is_distinct());
        let h = germ("colors: a b\nrel: a1 b2 = b1 a1", End::O);
        assert!(h.word_problem(&[Colour(1)], &[]).is_equal());
    }
}
