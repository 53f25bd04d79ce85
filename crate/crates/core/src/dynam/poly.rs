use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::finset::FinFunction;
use crate::scalar::{approx_eq_rel, Scalar};

/// Relative tolerance for comparing coefficients of canonical polynomials.
pub const COEFF_TOLERANCE: f64 = 1e-9;

/// A sparse multivariate polynomial over `vars` variables in canonical form:
/// distinct exponent vectors in ascending lexicographic order, each with a
/// coefficient above the drop tolerance.
///
/// Equality compares exponent sets exactly and coefficients within
/// [`COEFF_TOLERANCE`], relative.
#[derive(Clone, Debug)]
pub struct Polynomial<T> {
    vars: usize,
    terms: Vec<(Vec<u32>, T)>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn zero(vars: usize) -> Self {
        Polynomial { vars, terms: Vec::new() }
    }

    pub fn constant(vars: usize, c: T) -> Self {
        Polynomial::monomial(vars, vec![0; vars], c).expect("exponent vector has the right length")
    }

    /// `x_i`.
    pub fn variable(vars: usize, i: usize) -> Result<Self> {
        if i >= vars {
            return Err(Error::Dimension { expected: vars, found: i + 1 });
        }
        let mut e = vec![0; vars];
        e[i] = 1;
        Polynomial::monomial(vars, e, T::one())
    }

    /// `c · x^e`.
    pub fn monomial(vars: usize, exponents: Vec<u32>, c: T) -> Result<Self> {
        Polynomial::from_terms(vars, [(exponents, c)])
    }

    /// Canonicalizes arbitrary terms: like exponents are merged and small
    /// coefficients dropped.
    pub fn from_terms(vars: usize, terms: impl IntoIterator<Item = (Vec<u32>, T)>) -> Result<Self> {
        let mut acc: BTreeMap<Vec<u32>, T> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != vars {
                return Err(Error::Dimension { expected: vars, found: e.len() });
            }
            if !c.is_finite() {
                return Err(Error::InvalidSystem(format!("non-finite coefficient {c}")));
            }
            *acc.entry(e).or_insert_with(T::zero) += c;
        }
        Ok(Polynomial::from_sorted(vars, acc))
    }

    fn from_sorted(vars: usize, acc: BTreeMap<Vec<u32>, T>) -> Self {
        let tol = T::drop_tolerance();
        Polynomial { vars, terms: acc.into_iter().filter(|(_, c)| c.abs() > tol).collect() }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> &[(Vec<u32>, T)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn coefficient(&self, exponents: &[u32]) -> T {
        self.terms
            .binary_search_by(|(e, _)| e.as_slice().cmp(exponents))
            .map(|i| self.terms[i].1)
            .unwrap_or_else(|_| T::zero())
    }

    pub fn eval(&self, x: &[T]) -> Result<T> {
        if x.len() != self.vars {
            return Err(Error::Dimension { expected: self.vars, found: x.len() });
        }
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &[T]) -> T {
        let mut total = T::zero();
        for (e, c) in &self.terms {
            let mut m = *c;
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    m *= xi.powi(k as i32);
                }
            }
            total += m;
        }
        total
    }

    pub fn add(&self, other: &Polynomial<T>) -> Result<Polynomial<T>> {
        if self.vars != other.vars {
            return Err(Error::Dimension { expected: self.vars, found: other.vars });
        }
        Polynomial::from_terms(self.vars, self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn scale(&self, k: T) -> Polynomial<T> {
        let acc = self.terms.iter().map(|(e, c)| (e.clone(), *c * k)).collect();
        Polynomial::from_sorted(self.vars, acc)
    }

    /// Substitutes `x_σ := y_{f(σ)}`, giving a polynomial in `f.cod()` variables.
    pub fn pullback(&self, f: &FinFunction) -> Result<Polynomial<T>> {
        if f.dom().size != self.vars {
            return Err(Error::Dimension { expected: self.vars, found: f.dom().size });
        }
        let vars = f.cod().size;
        let terms = self.terms.iter().map(|(e, c)| {
            let mut moved = vec![0; vars];
            for (s, &k) in e.iter().enumerate() {
                moved[f.apply(s)] += k;
            }
            (moved, *c)
        });
        Polynomial::from_terms(vars, terms)
    }

    /// The same polynomial in `total` variables, with `x_i` renamed `x_{offset + i}`.
    pub fn embed(&self, offset: usize, total: usize) -> Polynomial<T> {
        assert!(offset + self.vars <= total, "embedding past the end");
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut moved = vec![0; total];
                moved[offset..offset + self.vars].copy_from_slice(e);
                (moved, *c)
            })
            .collect();
        // shifting preserves lexicographic order, so no re-sort is needed
        Polynomial { vars: total, terms }
    }

    /// Coefficients converted to `f64`.
    pub fn to_f64(&self) -> Polynomial<f64> {
        Polynomial {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.to_f64_lossy())).collect(),
        }
    }

    /// Renders with the given variable names, e.g. `-0.3*S*I + 2*R^2`.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        Named { p: self, names }
    }
}

impl<T: Scalar> PartialEq for Polynomial<T> {
    fn eq(&self, other: &Self) -> bool {
        let tol = T::from_f64_lossy(COEFF_TOLERANCE);
        self.vars == other.vars
            && self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .zip(&other.terms)
                .all(|((e1, c1), (e2, c2))| e1 == e2 && approx_eq_rel(*c1, *c2, tol))
    }
}

struct Named<'a, T> {
    p: &'a Polynomial<T>,
    names: &'a [String],
}

impl<T: Scalar> fmt::Display for Named<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.p.terms.iter().enumerate() {
            let (sign, mag) = if *c < T::zero() { ("-", -*c) } else { ("+", *c) };
            match (i, sign) {
                (0, "-") => write!(f, "-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| {
                    let name = self.names.get(v).cloned().unwrap_or_else(|| format!("x{v}"));
                    if k == 1 {
                        name
                    } else {
                        format!("{name}^{k}")
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == T::one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<T: Scalar> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}
