//! Integer Smith normal form and abelianizations of the T- and V-type groups.

use std::fmt;

use crate::error::{Error, Result};
use crate::forest::Colour;
use crate::skein_dsl::SkeinPresentation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<i128>>,
}

impl IntMatrix {
    pub fn new(cols: usize, data: Vec<Vec<i128>>) -> IntMatrix {
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { rows: data.len(), cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![vec![0; cols]; rows] }
    }
}

/// Diagonal `D = U M V`; only `V` is kept, it is what class computations need.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diagonal: Vec<i128>,
    pub v: Vec<Vec<i128>>,
}

#[allow(clippy::needless_range_loop)]
pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.data.clone();
    let mut v: Vec<Vec<i128>> = (0..c).map(|i| (0..c).map(|j| i128::from(i == j)).collect()).collect();
    let col_op = |a: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, dst: usize, src: usize, k: i128| {
        // column dst += k * column src
        for row in a.iter_mut() {
            row[dst] += k * row[src];
        }
        for row in v.iter_mut() {
            row[dst] += k * row[src];
        }
    };
    let col_swap = |a: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, x: usize, y: usize| {
        for row in a.iter_mut() {
            row.swap(x, y);
        }
        for row in v.iter_mut() {
            row.swap(x, y);
        }
    };
    let mut diagonal = Vec::new();
    for t in 0..r.min(c) {
        'pivot: loop {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break 'pivot;
            };
            a.swap(t, pi);
            col_swap(&mut a, &mut v, t, pj);
            let p = a[t][t];
            let mut dirty = false;
            for i in t + 1..r {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in t..c {
                        a[i][j] -= q * a[t][j];
                    }
                }
                dirty |= a[i][t] != 0;
            }
            for j in t + 1..c {
                let q = a[t][j] / p;
                if q != 0 {
                    col_op(&mut a, &mut v, j, t, -q);
                }
                dirty |= a[t][j] != 0;
            }
            if dirty {
                continue;
            }
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    for j in t..c {
                        a[t][j] += a[i][j];
                    }
                }
                None => break 'pivot,
            }
        }
        if t < r && a[t][t] < 0 {
            for j in t..c {
                a[t][j] = -a[t][j];
            }
        }
        if a[t][t] == 0 {
            break;
        }
        diagonal.push(a[t][t]);
    }
    Smith { diagonal, v }
}

/// Finitely generated abelian group as a list of invariant factors; `0` stands for `Z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    pub invariant_factors: Vec<u128>,
}

impl AbelianGroup {
    pub fn rank(&self) -> usize {
        self.invariant_factors.iter().filter(|d| **d == 0).count()
    }

    pub fn torsion(&self) -> Vec<u128> {
        self.invariant_factors.iter().copied().filter(|d| *d != 0).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank() {
            0 => {}
            1 => parts.push("Z".to_string()),
            k => parts.push(format!("Z^{k}")),
        }
        parts.extend(self.torsion().iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

/// The cokernel `Z^k / rowspace(M)` with coordinates for its elements.
#[derive(Clone, Debug)]
pub struct Cokernel {
    smith: Smith,
    cols: usize,
}

impl Cokernel {
    pub fn new(m: &IntMatrix) -> Cokernel {
        Cokernel { smith: smith_normal_form(m), cols: m.cols }
    }

    /// Modulus of each coordinate after the change of basis (0 for free ones).
    fn moduli(&self) -> Vec<i128> {
        (0..self.cols).map(|i| self.smith.diagonal.get(i).copied().unwrap_or(0)).collect()
    }

    pub fn group(&self) -> AbelianGroup {
        let mut finite: Vec<u128> =
            self.moduli().into_iter().filter(|d| *d > 1).map(|d| d as u128).collect();
        finite.sort();
        let free = self.moduli().into_iter().filter(|d| *d == 0).count();
        finite.extend(std::iter::repeat_n(0, free));
        AbelianGroup { invariant_factors: finite }
    }

    /// Coordinates of the class of `x`, one per nontrivial invariant factor, in the order of
    /// `group().invariant_factors`.
    pub fn class(&self, x: &[i64]) -> Vec<i128> {
        let xv: Vec<i128> = (0..self.cols)
            .map(|j| (0..self.cols).map(|i| i128::from(x[i]) * self.smith.v[i][j]).sum())
            .collect();
        let moduli = self.moduli();
        let mut finite: Vec<(i128, i128)> = Vec::new();
        let mut free = Vec::new();
        for (val, d) in xv.into_iter().zip(moduli) {
            if d == 0 {
                free.push(val);
            } else if d > 1 {
                finite.push((d, val.rem_euclid(d)));
            }
        }
        finite.sort_by_key(|(d, _)| *d);
        finite.into_iter().map(|(_, v)| v).chain(free).collect()
    }

    pub fn is_zero(&self, x: &[i64]) -> bool {
        self.class(x).iter().all(|v| *v == 0)
    }
}

/// One row `χ0(u) − χ0(v)` per relation, then the unit row `e_a`.
pub fn relation_matrix(p: &SkeinPresentation, base: Colour) -> Result<IntMatrix> {
    let k = p.colour_count();
    if base.0 as usize >= k {
        return Err(Error::UnknownColour(format!("#{}", base.0)));
    }
    let mut rows = relation_rows(p);
    let mut unit = vec![0; k];
    unit[base.0 as usize] = 1;
    rows.push(unit);
    Ok(IntMatrix::new(k, rows))
}

/// Rows `χ0(u) − χ0(v)` only.
pub fn relation_rows(p: &SkeinPresentation) -> Vec<Vec<i128>> {
    let k = p.colour_count();
    p.relations()
        .iter()
        .map(|(u, v)| {
            let (cu, cv) = (u.colour_count().to_vec(k), v.colour_count().to_vec(k));
            cu.iter().zip(&cv).map(|(a, b)| i128::from(a - b)).collect()
        })
        .collect()
}

pub fn abelianization_tv_with_base(p: &SkeinPresentation, base: Colour) -> Result<AbelianGroup> {
    Ok(Cokernel::new(&relation_matrix(p, base)?).group())
}

/// Abelianization of the T- and V-type groups with the first colour as base.
pub fn abelianization_tv(p: &SkeinPresentation) -> AbelianGroup {
    abelianization_tv_with_base(p, Colour(0)).expect("first colour exists")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skein_dsl::parse_presentation;

    fn coker(cols: usize, rows: &[&[i128]]) -> AbelianGroup {
        Cokernel::new(&IntMatrix::new(cols, rows.iter().map(|r| r.to_vec()).collect())).group()
    }

    #[test]
    fn small_cokernels() {
        assert_eq!(coker(2, &[&[2, -2], &[1, 0]]).to_string(), "Z/2");
        assert_eq!(coker(3, &[]).to_string(), "Z^3");
        assert_eq!(coker(1, &[&[1]]).to_string(), "0");
        assert_eq!(coker(2, &[&[2, 0], &[0, 3]]).to_string(), "Z/6");
        assert_eq!(coker(3, &[&[3, 0, 0], &[0, 3, 0]]).to_string(), "Z x Z/3 x Z/3");
    }

    #[test]
    fn cleary_matrix() {
        let p = parse_presentation("colors: a b\nrel: a1 a1 = b1 b2").unwrap();
        let m = relation_matrix(&p, Colour(0)).unwrap();
        assert_eq!(m.data, vec![vec![2, -2], vec![1, 0]]);
        assert_eq!(abelianization_tv(&p).to_string(), "Z/2");
        let c = Cokernel::new(&m);
        assert_eq!(c.class(&[0, 1]), vec![1]);
        assert_eq!(c.class(&[1, 0]), vec![0]);
        assert_eq!(c.class(&[0, 2]), vec![0]);
    }

    #[test]
    fn free_one_colour() {
        let p = parse_presentation("colors: a\nrel:").unwrap();
        assert_eq!(relation_matrix(&p, Colour(0)).unwrap().data, vec![vec![1]]);
        assert!(abelianization_tv(&p).is_trivial());
    }
}
