//! Laurent polynomials in `t^(1/2)`, the Fox-calculus Alexander polynomial of
//! a traced diagram, and the signed state count of a grid.

use std::collections::BTreeMap;
use std::fmt;

use crate::grid::{GridDiagram, LinkStructure, StateIter};

/// Laurent polynomial in `t`, stored with doubled exponents so that
/// `t^(1/2)` is exact.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(1, 0)
    }

    /// `coeff * t^(doubled / 2)`.
    pub fn monomial(coeff: i64, doubled: i64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(doubled, coeff);
        p
    }

    /// `sum coeffs[k] * t^(low + k)` with integer exponents.
    pub fn from_coeffs(low: i64, coeffs: &[i64]) -> Self {
        let mut p = LaurentPoly::zero();
        for (k, &c) in coeffs.iter().enumerate() {
            p.add_term(2 * (low + k as i64), c);
        }
        p
    }

    pub fn add_term(&mut self, doubled: i64, coeff: i64) {
        let e = self.terms.entry(doubled).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.terms.remove(&doubled);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(doubled exponent, coefficient)` pairs, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn coeff(&self, doubled: i64) -> i64 {
        self.terms.get(&doubled).copied().unwrap_or(0)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c);
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> LaurentPoly {
        (0..k).fold(LaurentPoly::one(), |acc, _| acc.mul(self))
    }

    /// Multiplies by `t^(doubled / 2)`.
    pub fn shift(&self, doubled: i64) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, &c)| (e + doubled, c)).collect(),
        }
    }

    pub fn at_one(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Representative of the class up to `+-t^k`: lowest exponent zero and
    /// positive leading coefficient.
    pub fn normalized(&self) -> LaurentPoly {
        let Some(low) = self.min_exp() else {
            return LaurentPoly::zero();
        };
        let p = self.shift(-low);
        let lead = p.terms.values().next_back().copied().unwrap_or(1);
        if lead < 0 {
            p.neg()
        } else {
            p
        }
    }

    /// Equality up to multiplication by `+-t^(k/2)`.
    pub fn equivalent(&self, other: &LaurentPoly) -> bool {
        self.normalized() == other.normalized()
    }

    /// Shifted so that the exponents are symmetric about zero.
    pub fn centered(&self) -> LaurentPoly {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => {
                // lo + hi may be odd in doubled units only if the span is odd,
                // in which case the center sits at a quarter exponent; round
                // toward zero.
                self.shift(-(lo + hi) / 2)
            }
            _ => LaurentPoly::zero(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&e, &c) in self.terms.iter().rev() {
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let power = if e % 2 == 0 {
                format!("{}", e / 2)
            } else {
                format!("({}/2)", e)
            };
            match (e, mag) {
                (0, m) => write!(f, "{m}")?,
                (_, 1) => write!(f, "t^{power}")?,
                (_, m) => write!(f, "{m}t^{power}")?,
            }
        }
        Ok(())
    }
}

/// Dense polynomial with nonnegative exponents, used inside the determinant.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Poly(Vec<i128>);

impl Poly {
    fn constant(c: i128) -> Poly {
        Poly(vec![c]).trimmed()
    }

    fn trimmed(mut self) -> Poly {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add_assign(&mut self, other: &Poly) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), 0);
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b;
        }
        let t = std::mem::replace(self, Poly(Vec::new())).trimmed();
        *self = t;
    }

    fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly(Vec::new());
        }
        let mut out = vec![0i128; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out).trimmed()
    }

    fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    /// Exact quotient; panics if the division leaves a remainder, which
    /// cannot happen inside Bareiss elimination.
    fn div_exact(&self, d: &Poly) -> Poly {
        let mut rem = self.0.clone();
        let dl = d.0.len();
        if rem.len() < dl {
            assert!(self.is_zero(), "inexact division in Bareiss step");
            return Poly(Vec::new());
        }
        let lead = *d.0.last().expect("nonzero divisor");
        let mut q = vec![0i128; rem.len() - dl + 1];
        for k in (0..q.len()).rev() {
            let top = rem[k + dl - 1];
            assert!(top % lead == 0, "inexact division in Bareiss step");
            let c = top / lead;
            q[k] = c;
            for (j, dc) in d.0.iter().enumerate() {
                rem[k + j] -= c * dc;
            }
        }
        assert!(
            rem.iter().all(|&c| c == 0),
            "inexact division in Bareiss step"
        );
        Poly(q).trimmed()
    }
}

/// Fraction-free determinant over `Z[t]`.
fn bareiss(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::constant(1);
    }
    let mut prev = Poly::constant(1);
    let mut negate = false;
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Poly(Vec::new()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let mut v = m[i][j].mul(&m[k][k]);
                v.add_assign(&m[i][k].mul(&m[k][j]).neg());
                m[i][j] = v.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

/// Single-variable Alexander polynomial from the Wirtinger presentation of a
/// traced diagram, normalized. Split diagrams give zero.
pub fn alexander_oracle(link: &LinkStructure) -> LaurentPoly {
    let arcs = link.strands.len();
    let rows = link.crossings.len();
    if arcs != rows {
        // A component that never passes under lifts off the rest.
        return if rows == 0 && arcs == 1 {
            LaurentPoly::one()
        } else {
            LaurentPoly::zero()
        };
    }
    let mut fox = vec![vec![Poly(Vec::new()); arcs]; rows];
    for (r, c) in link.crossings.iter().enumerate() {
        // Fox derivatives of x_over^e x_in x_over^-e x_out^-1 at x -> t,
        // scaled by t when e = -1.
        let (over, inc, out) = if c.sign > 0 {
            (Poly(vec![1, -1]), Poly(vec![0, 1]), Poly(vec![-1]))
        } else {
            (Poly(vec![-1, 1]), Poly(vec![1]), Poly(vec![0, -1]))
        };
        fox[r][c.over].add_assign(&over);
        fox[r][c.under_in].add_assign(&inc);
        fox[r][c.under_out].add_assign(&out);
    }
    let minor: Vec<Vec<Poly>> = fox[..rows - 1]
        .iter()
        .map(|row| row[..arcs - 1].to_vec())
        .collect();
    let det = bareiss(minor);
    let mut p = LaurentPoly::zero();
    for (k, &c) in det.0.iter().enumerate() {
        p.add_term(
            2 * k as i64,
            i64::try_from(c).expect("determinant fits in i64"),
        );
    }
    p.normalized()
}

/// `sum_x (-1)^M(x) t^A(x)` over all grid states.
pub fn euler_characteristic(g: &GridDiagram) -> LaurentPoly {
    let grader = g.grader();
    let mut p = LaurentPoly::zero();
    for s in StateIter::new(g.size()) {
        let b = grader.grading(s.as_slice());
        p.add_term(2 * b.s, if b.m.rem_euclid(2) == 0 { 1 } else { -1 });
    }
    p
}

/// `1 - t^-1`.
pub fn basepoint_factor() -> LaurentPoly {
    LaurentPoly::from_coeffs(-1, &[-1, 1])
}

/// `t^(1/2) - t^(-1/2)`.
pub fn skein_factor() -> LaurentPoly {
    LaurentPoly::monomial(1, 1).add(&LaurentPoly::monomial(-1, -1))
}

/// Checks `e+ D+ - e- D- = e0 (t^(1/2) - t^(-1/2)) D0` for some signs after
/// centering each polynomial. Returns the signs that work.
pub fn skein_relation(
    plus: &LaurentPoly,
    minus: &LaurentPoly,
    zero: &LaurentPoly,
) -> Option<(i64, i64, i64)> {
    let (p, m, z) = (plus.centered(), minus.centered(), zero.centered());
    let rhs = skein_factor().mul(&z);
    for ep in [1, -1] {
        for em in [1, -1] {
            for e0 in [1, -1] {
                let lhs = scale(&p, ep).sub(&scale(&m, em));
                if lhs == scale(&rhs, e0) {
                    return Some((ep, em, e0));
                }
            }
        }
    }
    None
}

fn scale(p: &LaurentPoly, c: i64) -> LaurentPoly {
    if c < 0 {
        p.neg()
    } else {
        p.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oracle(text: &str) -> LaurentPoly {
        alexander_oracle(&LinkStructure::trace(&GridDiagram::parse(text).unwrap()))
    }

    #[test]
    fn display_and_normalize() {
        let p = LaurentPoly::from_coeffs(-1, &[1, -1, 1]);
        assert_eq!(p.to_string(), "t^1 - 1 + t^-1");
        assert_eq!(p.normalized(), LaurentPoly::from_coeffs(0, &[1, -1, 1]));
        assert_eq!(skein_factor().to_string(), "t^(1/2) - t^(-1/2)");
        assert!(p.equivalent(&p.shift(4).neg()));
    }

    #[test]
    fn known_polynomials() {
        assert_eq!(oracle("n=2; O=1,0; X=0,1"), LaurentPoly::one());
        assert_eq!(
            oracle("n=5; O=0,1,2,3,4; X=2,3,4,0,1"),
            LaurentPoly::from_coeffs(0, &[1, -1, 1])
        );
        assert_eq!(
            oracle("n=4; O=0,1,2,3; X=2,3,0,1"),
            LaurentPoly::from_coeffs(0, &[-1, 1])
        );
        assert_eq!(
            oracle("n=6; O=1,0,4,5,2,3; X=5,2,1,3,4,0"),
            LaurentPoly::from_coeffs(0, &[1, -3, 1])
        );
    }

    #[test]
    fn unknot_euler_characteristic() {
        let g = GridDiagram::parse("n=2; O=1,0; X=0,1").unwrap();
        assert_eq!(euler_characteristic(&g), basepoint_factor());
    }

    #[test]
    fn euler_matches_oracle_for_knots() {
        for text in [
            "n=5; O=0,1,2,3,4; X=2,3,4,0,1",
            "n=6; O=1,0,4,5,2,3; X=5,2,1,3,4,0",
            "n=6; O=0,1,4,2,3,5; X=2,4,3,5,0,1",
        ] {
            let g = GridDiagram::parse(text).unwrap();
            let delta = alexander_oracle(&LinkStructure::trace(&g));
            let expected = delta.mul(&basepoint_factor().pow(g.size() - 1));
            assert!(euler_characteristic(&g).equivalent(&expected), "{text}");
        }
    }

    #[test]
    fn bareiss_small() {
        let m = vec![
            vec![Poly(vec![0, 1]), Poly(vec![1])],
            vec![Poly(vec![1]), Poly(vec![0, 1])],
        ];
        // t^2 - 1
        assert_eq!(bareiss(m), Poly(vec![-1, 0, 1]));
    }

    #[test]
    fn skein_on_hopf_unlink_unknot() {
        let hopf = LaurentPoly::from_coeffs(0, &[-1, 1]);
        assert!(skein_relation(&hopf, &LaurentPoly::zero(), &LaurentPoly::one()).is_some());
        assert!(skein_relation(&hopf, &LaurentPoly::one(), &LaurentPoly::one()).is_none());
    }
}
