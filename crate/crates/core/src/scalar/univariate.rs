use super::gaussint::{divisors, normalize_unit};
use super::GaussScalar;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use std::fmt;

/// Dense univariate polynomial over ℚ(i), lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<GaussScalar>,
}

/// Roots found in ℚ(i) plus the factors whose roots lie outside it.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UnivariateRoots {
    pub roots: Vec<GaussScalar>,
    pub unresolved: Vec<UniPoly>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<GaussScalar>) -> Self {
        while coeffs.last().is_some_and(GaussScalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&n| GaussScalar::from_int(n)).collect())
    }

    pub fn coeffs(&self) -> &[GaussScalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &GaussScalar) -> GaussScalar {
        let mut acc = GaussScalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * x + c;
        }
        acc
    }

    /// Quotient by `(x − r)`; the remainder is discarded.
    fn deflate(&self, r: &GaussScalar) -> UniPoly {
        let n = self.coeffs.len();
        let mut q = vec![GaussScalar::zero(); n.saturating_sub(1)];
        let mut carry = GaussScalar::zero();
        for k in (1..n).rev() {
            carry = &self.coeffs[k] + &(&carry * r);
            q[k - 1] = carry.clone();
        }
        UniPoly::new(q)
    }

    fn gaussian_integer_coeffs(&self) -> Option<Vec<(i128, i128)>> {
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.re_den()).lcm(c.im_den());
        }
        self.coeffs
            .iter()
            .map(|c| {
                let re = c.re_num() * (&l / c.re_den());
                let im = c.im_num() * (&l / c.im_den());
                Some((re.to_i128()?, im.to_i128()?))
            })
            .collect()
    }

    /// A root in ℚ(i) by the rational-root test over ℤ[i], if one exists and the
    /// coefficients are small enough to factor.
    fn find_gaussian_rational_root(&self) -> std::result::Result<Option<GaussScalar>, ()> {
        let ints = self.gaussian_integer_coeffs().ok_or(())?;
        let a0 = ints[0];
        let an = *ints.last().unwrap();
        let nums = divisors(a0).ok_or(())?;
        let mut dens: Vec<_> = divisors(an).ok_or(())?.into_iter().map(normalize_unit).collect();
        dens.sort();
        dens.dedup();
        let to_s = |g: (i128, i128)| {
            GaussScalar::complex(
                GaussScalar::from(num_rational::BigRational::from_integer(g.0.into())),
                GaussScalar::from(num_rational::BigRational::from_integer(g.1.into())),
            )
        };
        for q in &dens {
            let qs = to_s(*q);
            for p in &nums {
                let r = to_s(*p) / &qs;
                if self.eval(&r).is_zero() {
                    return Ok(Some(r));
                }
            }
        }
        Ok(None)
    }
}

/// All roots in ℚ(i) of a nonzero polynomial of any degree.
pub(crate) fn roots_any_degree(p: &UniPoly) -> Result<UnivariateRoots> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut roots = Vec::new();
    let mut unresolved = Vec::new();
    let mut q = p.clone();
    while q.coeffs.len() > 1 && q.coeffs[0].is_zero() {
        roots.push(GaussScalar::zero());
        q = UniPoly::new(q.coeffs[1..].to_vec());
    }
    while q.degree().unwrap_or(0) >= 3 {
        match q.find_gaussian_rational_root() {
            Ok(Some(r)) => {
                q = q.deflate(&r);
                roots.push(r);
            }
            _ => break,
        }
    }
    match q.degree() {
        Some(1) => roots.push(-(&q.coeffs[0] / &q.coeffs[1])),
        Some(2) => {
            let (c, b, a) = (&q.coeffs[0], &q.coeffs[1], &q.coeffs[2]);
            let disc = b * b - GaussScalar::from_int(4) * a * c;
            let sq = disc.sqrt();
            if sq.is_empty() {
                unresolved.push(q.clone());
            } else {
                let two_a = GaussScalar::from_int(2) * a;
                for s in sq {
                    roots.push((-b + s) / &two_a);
                }
            }
        }
        Some(d) if d >= 3 => unresolved.push(q.clone()),
        _ => {}
    }
    roots.sort();
    roots.dedup();
    debug_assert!(roots.iter().all(|r| p.eval(r).is_zero()));
    Ok(UnivariateRoots { roots, unresolved })
}

/// Roots in ℚ(i) of a polynomial of degree at most 4; factors without roots in ℚ(i)
/// come back in `unresolved`.
pub fn solve_univariate(p: &UniPoly) -> Result<UnivariateRoots> {
    match p.degree() {
        None => Err(Error::ZeroPolynomial),
        Some(d) if d > 4 => Err(Error::UnsupportedDegree(d)),
        Some(_) => roots_any_degree(p),
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})*t"),
                _ => format!("({c})*t^{k}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::sc;

    fn roots(c: &[i64]) -> UnivariateRoots {
        solve_univariate(&UniPoly::from_ints(c)).unwrap()
    }

    #[test]
    fn idempotent_equation() {
        let r = roots(&[0, -1, 1]);
        assert_eq!(r.roots, vec![sc("0"), sc("1")]);
        assert!(r.unresolved.is_empty());
    }

    #[test]
    fn fourth_roots_of_unity() {
        let r = roots(&[-1, 0, 0, 0, 1]);
        assert_eq!(r.roots, vec![sc("-1"), sc("-i"), sc("i"), sc("1")]);
        assert!(r.unresolved.is_empty());
    }

    #[test]
    fn irrational_roots_are_unresolved() {
        let r = roots(&[-2, 0, 1]);
        assert!(r.roots.is_empty());
        assert_eq!(r.unresolved, vec![UniPoly::from_ints(&[-2, 0, 1])]);
        // (t − 1)(t² − 2) keeps the rational root and returns the quadratic factor
        let r = roots(&[2, -2, -1, 1]);
        assert_eq!(r.roots, vec![sc("1")]);
        assert_eq!(r.unresolved.len(), 1);
        // (t² − 2)(t² − 3) has no roots in ℚ(i) and stays whole
        let r = roots(&[6, 0, -5, 0, 1]);
        assert!(r.roots.is_empty());
        assert_eq!(r.unresolved[0].degree(), Some(4));
    }

    #[test]
    fn gaussian_rational_roots_of_cubic() {
        // 2(t − i/2)(t + 3/2)(t − 1): roots with nontrivial denominators
        let want = [sc("1/2*i"), sc("-3/2"), sc("1")];
        let prod = {
            let mut q = UniPoly::new(vec![sc("1")]);
            for r in &want {
                let mut c = vec![GaussScalar::zero(); q.coeffs.len() + 1];
                for (k, a) in q.coeffs.iter().enumerate() {
                    c[k + 1] = &c[k + 1] + a;
                    c[k] = &c[k] - &(a * r);
                }
                q = UniPoly::new(c);
            }
            q
        };
        let p2 = UniPoly::new(prod.coeffs.iter().map(|c| c * &sc("2")).collect());
        let r = solve_univariate(&p2).unwrap();
        let mut w = want.to_vec();
        w.sort();
        assert_eq!(r.roots, w);
    }

    #[test]
    fn degree_guard() {
        assert_eq!(solve_univariate(&UniPoly::from_ints(&[0, 0, 0, 0, 0, 1])), Err(Error::UnsupportedDegree(5)));
        assert_eq!(solve_univariate(&UniPoly::default()), Err(Error::ZeroPolynomial));
        assert!(solve_univariate(&UniPoly::from_ints(&[3])).unwrap().roots.is_empty());
    }

    #[test]
    fn repeated_roots_reported_once() {
        // (t − 1)³ (t + 1)
        let r = roots(&[-1, 2, 0, -2, 1]);
        assert_eq!(r.roots, vec![sc("-1"), sc("1")]);
    }
}
