//! Univariate polynomials over ℚ and exact recovery of rational roots and
//! rational irreducible quadratic factors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::rational_to_f64;
use crate::Rational;

/// Coefficients from degree 0 upwards, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

/// A factor of the characteristic polynomial that the exact path can use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactRoot {
    /// `(x - value)^multiplicity`.
    Real { value: Rational, multiplicity: usize },
    /// `(x² + p·x + q)^multiplicity` with `p² < 4q`.
    Pair { p: Rational, q: Rational, multiplicity: usize },
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn one() -> Self {
        Self::new(vec![Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        Self::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(vec![]);
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = Rational::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) - other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    /// Quotient and remainder. Panics when dividing by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        if self.is_zero() || self.degree() < dd {
            return (Self::new(vec![]), self.clone());
        }
        let lead = d.lead();
        let mut q = vec![Rational::zero(); self.degree() - dd + 1];
        for k in (0..q.len()).rev() {
            let f = &r[k + dd] / &lead;
            if !f.is_zero() {
                for (j, c) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &f * c;
                }
            }
            q[k] = f;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    /// Exact quotient when `d` divides `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Square-free decomposition `f = c · Π a_i^i` (Yun), returned as the
    /// nonconstant `(a_i, i)`.
    pub fn squarefree(&self) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_exact(&a0).expect("gcd divides");
        let c = fp.div_exact(&a0).expect("gcd divides");
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree() > 0 {
            let a = b.gcd(&d);
            let nb = b.div_exact(&a).expect("gcd divides");
            let nc = d.div_exact(&a).expect("gcd divides");
            d = nc.sub(&nb.derivative());
            b = nb;
            if a.degree() > 0 {
                out.push((a, i));
            }
            i += 1;
        }
        out
    }

    /// Approximate complex roots from the companion matrix.
    pub fn float_roots(&self) -> Vec<(f64, f64)> {
        let n = self.degree();
        if n == 0 {
            return vec![];
        }
        let m = self.monic();
        let c: Vec<f64> = m.coeffs.iter().map(rational_to_f64).collect();
        let mut comp = nalgebra::DMatrix::<f64>::zeros(n, n);
        for i in 1..n {
            comp[(i, i - 1)] = 1.0;
        }
        for i in 0..n {
            comp[(i, n - 1)] = -c[i];
        }
        // A 2×2 Schur block with a discriminant of about -ε yields a NaN
        // imaginary part for what is a double real root.
        comp.complex_eigenvalues().iter().map(|z| (z.re, if z.im.is_nan() { 0.0 } else { z.im })).collect()
    }

    /// Denominator bound for rational roots: the leading coefficient of the
    /// primitive integer multiple.
    fn root_denominator_bound(&self) -> u64 {
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let lead = ints.last().cloned().unwrap_or_else(BigInt::one) / if g.is_zero() { BigInt::one() } else { g };
        lead.abs().to_u64().unwrap_or(u64::MAX).clamp(1, 1 << 40)
    }
}

fn linear(root: &Rational) -> Poly {
    Poly::new(vec![-root.clone(), Rational::one()])
}

fn rational_candidates(x: f64, max_den: u64) -> Vec<Rational> {
    let mut c = crate::convergents(x, max_den);
    c.reverse();
    c
}

/// Factors a polynomial into rational linear factors and rational irreducible
/// quadratics, or returns `None` if some root lies outside that range.
pub fn exact_roots(p: &Poly) -> Option<Vec<ExactRoot>> {
    let mut out = Vec::new();
    for (factor, multiplicity) in p.squarefree() {
        let mut rest = factor.clone();
        let bound = factor.root_denominator_bound();
        let roots = factor.float_roots();
        for &(re, im) in &roots {
            if im.abs() > 1e-7 * (1.0 + re.abs()) {
                continue;
            }
            let hit = rational_candidates(re, bound).into_iter().find(|r| rest.eval(r).is_zero());
            if let Some(r) = hit {
                rest = rest.div_exact(&linear(&r))?;
                out.push(ExactRoot::Real { value: r, multiplicity });
            }
        }
        for &(re, im) in &roots {
            if rest.degree() < 2 || im <= 1e-7 * (1.0 + re.abs()) {
                continue;
            }
            let ps = rational_candidates(-2.0 * re, 1 << 40);
            let qs = rational_candidates(re * re + im * im, 1 << 40);
            'search: for pc in ps.iter().take(8) {
                for qc in qs.iter().take(8) {
                    let quad = Poly::new(vec![qc.clone(), pc.clone(), Rational::one()]);
                    let disc = pc * pc - Rational::from_integer(4.into()) * qc;
                    if !disc.is_negative() {
                        continue;
                    }
                    if let Some(q) = rest.div_exact(&quad) {
                        rest = q;
                        out.push(ExactRoot::Pair { p: pc.clone(), q: qc.clone(), multiplicity });
                        break 'search;
                    }
                }
            }
        }
        if rest.degree() > 0 {
            return None;
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    fn poly(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&v| ratio(v, 1)).collect())
    }

    #[test]
    fn yun_separates_multiplicities() {
        // (x-1)^3 (x+2)
        let f = linear(&ratio(1, 1)).mul(&linear(&ratio(1, 1))).mul(&linear(&ratio(1, 1))).mul(&linear(&ratio(-2, 1)));
        let sf = f.squarefree();
        assert_eq!(sf.len(), 2);
        assert_eq!(sf[0], (linear(&ratio(-2, 1)), 1));
        assert_eq!(sf[1], (linear(&ratio(1, 1)), 3));
    }

    #[test]
    fn exact_roots_find_fractions_and_pairs() {
        // (3x - 1)^2 (x^2 + 2x + 5)
        let a = poly(&[-1, 3]);
        let f = a.mul(&a).mul(&poly(&[5, 2, 1]));
        let roots = exact_roots(&f).unwrap();
        assert!(roots.contains(&ExactRoot::Real { value: ratio(1, 3), multiplicity: 2 }));
        assert!(roots.contains(&ExactRoot::Pair { p: ratio(2, 1), q: ratio(5, 1), multiplicity: 1 }));
    }

    #[test]
    fn irrational_roots_are_refused() {
        assert!(exact_roots(&poly(&[-2, 0, 1])).is_none());
    }
}
