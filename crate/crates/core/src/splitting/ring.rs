use crate::error::{Error, Result};
use crate::ff::{binomial, Monomial, PolynomialFp, PrimeField};

/// The graded ring `R = F_p[x_0..x_{v−1}]/(G)` for a homogeneous `G`.
///
/// Normality of `R` is a precondition of the splitting theory that cannot
/// be verified here; callers may mark a ring as not known to be normal,
/// which downgrades the duality and scan checks to advisory.
#[derive(Clone, Debug)]
pub struct GradedHypersurface {
    g: PolynomialFp,
    names: Vec<String>,
    degree: u32,
    normal_asserted: bool,
}

impl GradedHypersurface {
    pub fn new(g: PolynomialFp, names: Vec<String>) -> Result<Self> {
        if g.is_zero() {
            return Err(Error::Input("defining polynomial is zero".into()));
        }
        let degree = g.homogeneous_degree().ok_or_else(|| {
            Error::Input("defining polynomial is not homogeneous".into())
        })?;
        if degree == 0 {
            return Err(Error::Input("defining polynomial is a nonzero constant".into()));
        }
        if g.nvars() < 2 {
            return Err(Error::Input("need at least two variables".into()));
        }
        if names.len() != g.nvars() {
            return Err(Error::Input(format!(
                "{} variable names for {} variables",
                names.len(),
                g.nvars()
            )));
        }
        Ok(GradedHypersurface {
            g,
            names,
            degree,
            normal_asserted: true,
        })
    }

    /// Names the variables `x0, x1, …`.
    pub fn with_default_names(g: PolynomialFp) -> Result<Self> {
        let names = (0..g.nvars()).map(|i| format!("x{i}")).collect();
        Self::new(g, names)
    }

    /// The diagonal hypersurface `x_0^δ + … + x_{v−1}^δ`.
    pub fn diagonal(p: u64, v: usize, delta: u32) -> Result<Self> {
        let field = PrimeField::new(p)?;
        let g = PolynomialFp::from_terms(field, v, (0..v).map(|i| (Monomial::var(v, i, delta), 1)));
        Self::with_default_names(g)
    }

    /// Marks `R` as not known to be normal.
    pub fn assume_not_normal(mut self) -> Self {
        self.normal_asserted = false;
        self
    }

    pub fn normal_asserted(&self) -> bool {
        self.normal_asserted
    }

    pub fn field(&self) -> PrimeField {
        self.g.field()
    }

    pub fn p(&self) -> u64 {
        self.g.field().modulus()
    }

    pub fn polynomial(&self) -> &PolynomialFp {
        &self.g
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Number of variables `v`.
    pub fn nvars(&self) -> usize {
        self.g.nvars()
    }

    /// Degree `δ` of `G`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `v − δ`, the integer `s` with `−K_X ~ sH`.
    pub fn fano_coindex(&self) -> i64 {
        self.nvars() as i64 - self.degree as i64
    }

    pub fn is_fano(&self) -> bool {
        self.fano_coindex() > 0
    }

    /// `dim R_m = C(m+v−1, v−1) − C(m−δ+v−1, v−1)`.
    pub fn dim_r(&self, m: u64) -> Result<u64> {
        let v = self.nvars() as u64;
        let overflow = || Error::too_large("dim R_m", u128::MAX, u64::MAX as u128);
        let all = binomial(m + v - 1, v - 1).ok_or_else(overflow)?;
        let multiples = if m >= self.degree as u64 {
            binomial(m - self.degree as u64 + v - 1, v - 1).ok_or_else(overflow)?
        } else {
            0
        };
        u64::try_from(all - multiples).map_err(|_| overflow())
    }

    /// Duality pivot `M_e = (q−1)(v−δ)`, or `None` when `v < δ`.
    pub fn pivot_degree(&self, q: u64) -> Option<u64> {
        u64::try_from(self.fano_coindex())
            .ok()
            .map(|c| (q - 1) * c)
    }

    pub fn display_polynomial(&self) -> String {
        self.g.to_string_with(&self.names)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::monomials_of_degree;

    #[test]
    fn dimension_formula_matches_normal_form_count() {
        let ring = GradedHypersurface::diagonal(5, 4, 3).unwrap();
        let lead = ring.polynomial().lex_leading().unwrap().0.clone();
        for m in 0..12u32 {
            let nf = monomials_of_degree(4, m)
                .unwrap()
                .into_iter()
                .filter(|mono| !lead.divides(mono))
                .count() as u64;
            assert_eq!(ring.dim_r(m as u64).unwrap(), nf, "m = {m}");
        }
    }

    #[test]
    fn rejects_bad_generators() {
        let f = PrimeField::new(7).unwrap();
        let inhom = PolynomialFp::from_terms(f, 2, [(Monomial::new(&[2, 0]), 1), (Monomial::new(&[1, 0]), 1)]);
        assert!(GradedHypersurface::with_default_names(inhom).is_err());
        assert!(GradedHypersurface::with_default_names(PolynomialFp::zero(f, 2)).is_err());
        assert!(GradedHypersurface::with_default_names(PolynomialFp::one(f, 2)).is_err());
    }

    #[test]
    fn coindex_and_pivot() {
        let cubic = GradedHypersurface::diagonal(5, 4, 3).unwrap();
        assert_eq!(cubic.fano_coindex(), 1);
        assert_eq!(cubic.pivot_degree(25), Some(24));
        let curve = GradedHypersurface::diagonal(5, 3, 4).unwrap();
        assert_eq!(curve.pivot_degree(5), None);
    }
}
