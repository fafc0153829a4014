use super::descriptor::LFunctionDescriptor;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::collections::BTreeMap;

/// `L_u^{(l)}(s)^d`, with `u` an index into the expression's L-function list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub lfunc: usize,
    pub deriv: u32,
    pub exp: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Monomial {
    pub coeff: Complex64,
    pub factors: Vec<Factor>,
}

/// `F(s) = sum_j c_j prod L_u^{(l)}(s)^{d}`.
#[derive(Debug, Clone)]
pub struct PolyExpression {
    lfuncs: Vec<LFunctionDescriptor>,
    monomials: Vec<Monomial>,
}

impl PolyExpression {
    /// Raw expression; factor indices must point into `lfuncs` and ids must
    /// be distinct.
    pub fn new(lfuncs: Vec<LFunctionDescriptor>, monomials: Vec<Monomial>) -> Result<Self> {
        if monomials.is_empty() {
            return Err(Error::InvalidInput("expression has no monomials".into()));
        }
        for (i, a) in lfuncs.iter().enumerate() {
            if lfuncs[..i].iter().any(|b| b.id == a.id) {
                return Err(Error::InvalidInput(format!("duplicate L-function id `{}`", a.id)));
            }
        }
        for m in &monomials {
            if !(m.coeff.re.is_finite() && m.coeff.im.is_finite()) {
                return Err(Error::InvalidInput("non-finite coefficient".into()));
            }
            for f in &m.factors {
                if f.lfunc >= lfuncs.len() {
                    return Err(Error::InvalidInput(format!("factor refers to L-function #{}", f.lfunc)));
                }
                if f.exp == 0 {
                    return Err(Error::InvalidInput("factor exponents must be positive".into()));
                }
            }
        }
        Ok(PolyExpression { lfuncs, monomials })
    }

    pub fn lfuncs(&self) -> &[LFunctionDescriptor] {
        &self.lfuncs
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn lfunc(&self, id: &str) -> Option<&LFunctionDescriptor> {
        self.lfuncs.iter().find(|d| d.id == id)
    }

    pub fn builder() -> Builder {
        Builder::default()
    }

    /// `F(s, dual pi)`: every descriptor replaced by its contragredient,
    /// coefficients unchanged.
    pub fn dual(&self) -> PolyExpression {
        PolyExpression { lfuncs: self.lfuncs.iter().map(|d| d.dual()).collect(), monomials: self.monomials.clone() }
    }

    /// Highest derivative order of each L-function.
    pub fn max_derivs(&self) -> Vec<Option<u32>> {
        let mut out = vec![None; self.lfuncs.len()];
        for m in &self.monomials {
            for f in &m.factors {
                let e: &mut Option<u32> = &mut out[f.lfunc];
                *e = Some(e.map_or(f.deriv, |x| x.max(f.deriv)));
            }
        }
        out
    }

    pub fn canonicalize(&self) -> Result<PolyExpression> {
        canonicalize(self)
    }
}

/// Incremental construction keyed by descriptor id.
#[derive(Debug, Default)]
pub struct Builder {
    lfuncs: Vec<LFunctionDescriptor>,
    monomials: Vec<Monomial>,
}

impl Builder {
    fn index(&mut self, d: &LFunctionDescriptor) -> usize {
        match self.lfuncs.iter().position(|x| x.id == d.id) {
            Some(i) => i,
            None => {
                self.lfuncs.push(d.clone());
                self.lfuncs.len() - 1
            }
        }
    }

    /// Adds `c * prod L^{(l)}^d` for `(L, l, d)` in `factors`.
    pub fn term(mut self, c: impl Into<Complex64>, factors: &[(&LFunctionDescriptor, u32, u32)]) -> Self {
        let factors = factors.iter().map(|(d, l, e)| Factor { lfunc: self.index(d), deriv: *l, exp: *e }).collect();
        self.monomials.push(Monomial { coeff: c.into(), factors });
        self
    }

    pub fn build(self) -> Result<PolyExpression> {
        PolyExpression::new(self.lfuncs, self.monomials)?.canonicalize()
    }

    pub fn build_raw(self) -> Result<PolyExpression> {
        PolyExpression::new(self.lfuncs, self.monomials)
    }
}

/// Merges repeated factors and monomials, drops cancelled monomials and
/// unused L-functions, and orders everything by id.
pub fn canonicalize(raw: &PolyExpression) -> Result<PolyExpression> {
    // L-functions that are referenced, sorted by id
    let mut used: Vec<usize> = raw.monomials.iter().flat_map(|m| m.factors.iter().map(|f| f.lfunc)).collect();
    used.sort_by(|a, b| raw.lfuncs[*a].id.cmp(&raw.lfuncs[*b].id));
    used.dedup();
    let remap: BTreeMap<usize, usize> = used.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let lfuncs: Vec<LFunctionDescriptor> = used.iter().map(|&i| raw.lfuncs[i].clone()).collect();

    let mut merged: BTreeMap<Vec<(u32, u32, u32)>, (Complex64, f64)> = BTreeMap::new();
    for m in &raw.monomials {
        let mut exps: BTreeMap<(u32, u32), u32> = BTreeMap::new();
        for f in &m.factors {
            *exps.entry((remap[&f.lfunc] as u32, f.deriv)).or_default() += f.exp;
        }
        let key: Vec<(u32, u32, u32)> = exps.into_iter().map(|((u, l), d)| (u, l, d)).collect();
        let e = merged.entry(key).or_insert((Complex64::new(0.0, 0.0), 0.0));
        e.0 += m.coeff;
        e.1 += m.coeff.norm();
    }
    // Indices follow the id order, so the map order is the canonical one.
    let monomials: Vec<Monomial> = merged
        .into_iter()
        .filter(|(_, (c, scale))| c.norm() > 4.0 * f64::EPSILON * scale)
        .map(|(key, (c, _))| Monomial {
            coeff: c,
            factors: key.into_iter().map(|(u, l, d)| Factor { lfunc: u as usize, deriv: l, exp: d }).collect(),
        })
        .collect();
    if monomials.is_empty() {
        return Err(Error::ZeroExpression);
    }
    Ok(PolyExpression { lfuncs, monomials })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta() -> LFunctionDescriptor {
        LFunctionDescriptor::zeta("zeta")
    }

    #[test]
    fn coefficient_addition() {
        let z = zeta();
        let f = PolyExpression::builder().term(2.0, &[(&z, 0, 1)]).term(3.0, &[(&z, 0, 1)]).build().unwrap();
        assert_eq!(f.monomials().len(), 1);
        assert_eq!(f.monomials()[0].coeff, Complex64::new(5.0, 0.0));
    }

    #[test]
    fn exponent_merge() {
        let z = zeta();
        let f = PolyExpression::builder().term(1.0, &[(&z, 0, 1), (&z, 0, 1)]).build().unwrap();
        assert_eq!(f.monomials()[0].factors, vec![Factor { lfunc: 0, deriv: 0, exp: 2 }]);
    }

    #[test]
    fn total_cancellation() {
        let z = zeta();
        let r = PolyExpression::builder().term(1.0, &[(&z, 1, 1)]).term(-1.0, &[(&z, 1, 1)]).build();
        assert!(matches!(r, Err(Error::ZeroExpression)));
    }

    #[test]
    fn ordering_is_by_id() {
        let z = zeta();
        let l = LFunctionDescriptor::dirichlet("L3", 3, 2).unwrap();
        let f = PolyExpression::builder()
            .term(1.0, &[(&z, 1, 1)])
            .term(2.0, &[(&l, 0, 1), (&z, 0, 1)])
            .term(3.0, &[])
            .build()
            .unwrap();
        assert_eq!(f.lfuncs()[0].id, "L3");
        assert!(f.monomials()[0].factors.is_empty());
        let again = f.canonicalize().unwrap();
        assert_eq!(again.monomials(), f.monomials());
    }
}
