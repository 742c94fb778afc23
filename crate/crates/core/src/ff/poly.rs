use std::collections::HashMap;
use std::fmt::Write as _;

use super::monomial::Monomial;
use super::PrimeField;
use crate::error::{Error, Result};

/// Default cap on the number of terms of any intermediate product.
pub const DEFAULT_TERM_CAP: usize = 10_000_000;

/// Sparse multivariate polynomial over `F_p`.
///
/// Terms are kept sorted in ascending graded colex order with no zero
/// coefficients; `homogeneous_degree` is `Some(d)` exactly when every term
/// has degree `d` (the zero polynomial has `None`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialFp {
    field: PrimeField,
    nvars: usize,
    terms: Vec<(Monomial, u32)>,
    homogeneous_degree: Option<u32>,
}

impl PolynomialFp {
    pub fn zero(field: PrimeField, nvars: usize) -> Self {
        PolynomialFp {
            field,
            nvars,
            terms: Vec::new(),
            homogeneous_degree: None,
        }
    }

    pub fn one(field: PrimeField, nvars: usize) -> Self {
        Self::from_terms(field, nvars, [(Monomial::one(nvars), 1u64)])
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, combining
    /// repeated monomials and reducing coefficients mod `p`.
    pub fn from_terms<I>(field: PrimeField, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, u64)>,
    {
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for (mono, c) in terms {
            assert_eq!(mono.nvars(), nvars, "monomial arity mismatch");
            let c = field.reduce(c);
            let slot = acc.entry(mono).or_insert(0);
            *slot = field.add(*slot, c);
        }
        Self::from_map(field, nvars, acc)
    }

    fn from_map(field: PrimeField, nvars: usize, acc: HashMap<Monomial, u32>) -> Self {
        let mut terms: Vec<(Monomial, u32)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let homogeneous_degree = match terms.first() {
            Some((first, _)) if terms.iter().all(|(m, _)| m.degree() == first.degree()) => {
                Some(first.degree())
            }
            _ => None,
        };
        PolynomialFp {
            field,
            nvars,
            terms,
            homogeneous_degree,
        }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    #[inline]
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn homogeneous_degree(&self) -> Option<u32> {
        self.homogeneous_degree
    }

    pub fn coefficient(&self, mono: &Monomial) -> u32 {
        self.terms
            .binary_search_by(|(m, _)| m.cmp(mono))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    pub fn add(&self, other: &PolynomialFp) -> PolynomialFp {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &PolynomialFp) -> PolynomialFp {
        self.combine(other, true)
    }

    fn combine(&self, other: &PolynomialFp, negate: bool) -> PolynomialFp {
        let f = self.field;
        let mut acc: HashMap<Monomial, u32> = self.terms.iter().cloned().collect();
        for (m, c) in &other.terms {
            let c = if negate { f.neg(*c) } else { *c };
            let slot = acc.entry(m.clone()).or_insert(0);
            *slot = f.add(*slot, c);
        }
        Self::from_map(f, self.nvars, acc)
    }

    pub fn scale(&self, c: u32) -> PolynomialFp {
        let f = self.field;
        Self::from_terms(
            f,
            self.nvars,
            self.terms.iter().map(|(m, a)| (m.clone(), f.mul(*a, c) as u64)),
        )
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> PolynomialFp {
        let mut out = self.clone();
        for (m, _) in out.terms.iter_mut() {
            *m = m.mul(mono);
        }
        out.homogeneous_degree = self.homogeneous_degree.map(|d| d + mono.degree());
        out
    }

    /// Product, refusing results with more than `cap` terms.
    pub fn mul_capped(&self, other: &PolynomialFp, cap: usize) -> Result<PolynomialFp> {
        assert_eq!(self.nvars, other.nvars, "polynomial arity mismatch");
        let f = self.field;
        let mut acc: HashMap<Monomial, u32> =
            HashMap::with_capacity((self.terms.len() * other.terms.len()).min(1 << 20));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = f.mul(*ca, *cb);
                let slot = acc.entry(ma.mul(mb)).or_insert(0);
                *slot = f.add(*slot, c);
            }
            if acc.len() > cap {
                return Err(Error::PowerTooLarge {
                    terms: acc.len(),
                    cap,
                });
            }
        }
        Ok(Self::from_map(f, self.nvars, acc))
    }

    pub fn mul(&self, other: &PolynomialFp) -> PolynomialFp {
        self.mul_capped(other, usize::MAX).expect("uncapped product")
    }

    /// `self^n` by binary powering.
    pub fn pow_capped(&self, mut n: u64, cap: usize) -> Result<PolynomialFp> {
        let mut acc = PolynomialFp::one(self.field, self.nvars);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_capped(&base, cap)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_capped(&base, cap)?;
            }
        }
        Ok(acc)
    }

    /// Substitutes `x_i ↦ x_i^factor` for every variable. Over a prime field
    /// this is the Frobenius twist when `factor` is a power of `p`.
    pub fn frobenius_twist(&self, factor: u32) -> PolynomialFp {
        PolynomialFp {
            field: self.field,
            nvars: self.nvars,
            terms: {
                // scaling exponents preserves the order within and across degrees
                self.terms
                    .iter()
                    .map(|(m, c)| (m.scale(factor), *c))
                    .collect()
            },
            homogeneous_degree: self.homogeneous_degree.map(|d| d * factor),
        }
    }

    /// Lexicographically largest monomial, a valid leading term for the
    /// principal ideal `(self)` under lex order.
    pub fn lex_leading(&self) -> Option<&(Monomial, u32)> {
        self.terms
            .iter()
            .max_by(|a, b| a.0.exponents().cmp(b.0.exponents()))
    }

    /// Remainder of `self` on division by `g` under lex order. Since `{g}` is
    /// a Gröbner basis of `(g)`, the remainder is zero iff `g` divides `self`.
    pub fn remainder_mod(&self, g: &PolynomialFp) -> PolynomialFp {
        let f = self.field;
        let (lead, lc) = g.lex_leading().expect("division by zero polynomial").clone();
        let lc_inv = f.inv(lc).expect("nonzero leading coefficient");
        let mut rem = self.clone();
        loop {
            let next = rem
                .terms
                .iter()
                .filter(|(m, _)| lead.divides(m))
                .max_by(|a, b| a.0.exponents().cmp(b.0.exponents()))
                .cloned();
            let Some((m, c)) = next else { break };
            let shift = lead.quotient_of(&m);
            let factor = f.mul(c, lc_inv);
            rem = rem.sub(&g.mul_monomial(&shift).scale(factor));
        }
        rem
    }

    /// Human-readable form using the given variable names, highest term first.
    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (mono, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let factors: Vec<String> = mono
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(j, &a)| {
                    if a == 1 {
                        names[j].clone()
                    } else {
                        format!("{}^{}", names[j], a)
                    }
                })
                .collect();
            if factors.is_empty() {
                let _ = write!(out, "{c}");
            } else if *c == 1 {
                out.push_str(&factors.join("*"));
            } else {
                let _ = write!(out, "{c}*{}", factors.join("*"));
            }
        }
        out
    }
}

/// `G^{p^e − 1}` computed as `∏_{i<e} Frob^i(G^{p−1})`.
///
/// Since `p^e − 1 = Σ_i (p−1) p^i` and `h^{p^i}` is the Frobenius twist of
/// `h` over `F_p`, the product of twisted factors equals the plain power.
pub fn digit_power(g: &PolynomialFp, e: u32, cap: usize) -> Result<PolynomialFp> {
    if g.is_zero() {
        return Err(Error::Input("digit_power of the zero polynomial".into()));
    }
    if e == 0 {
        return Err(Error::Input("Frobenius level e must be at least 1".into()));
    }
    let p = g.field().p();
    let base = g.pow_capped(p as u64 - 1, cap)?;
    let mut acc = base.clone();
    let mut twist: u32 = 1;
    for _ in 1..e {
        twist = twist
            .checked_mul(p)
            .ok_or_else(|| Error::too_large("p^e", u128::MAX, u32::MAX as u128))?;
        acc = acc.mul_capped(&base.frobenius_twist(twist), cap)?;
    }
    Ok(acc)
}
