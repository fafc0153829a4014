use crate::error::{Error, Result};
use crate::lfuncs::characters::{self, Character};
use crate::lfuncs::fe::GammaData;
use crate::lfuncs::lvalue::LEval;
use num_complex::Complex64;
use std::sync::Arc;

/// Where the coefficients and the evaluator of a descriptor come from.
#[derive(Debug, Clone)]
pub enum Source {
    Zeta,
    Dirichlet(Character),
    /// User-supplied coefficients `lambda(1..=N)`; evaluation only right of
    /// `1 + theta`.
    Series(Arc<Vec<Complex64>>),
}

/// Analytic data of one L-function.
#[derive(Debug, Clone)]
pub struct LFunctionDescriptor {
    pub id: String,
    pub rank: u32,
    pub conductor: u64,
    pub log_conductor: f64,
    pub spectral_params: Vec<Complex64>,
    pub pole_order: u32,
    pub root_number: Complex64,
    pub self_dual: bool,
    pub contragredient_id: String,
    pub ramanujan_bound: f64,
    pub source: Source,
    eval: LEval,
}

fn dual_id(id: &str) -> String {
    match id.strip_suffix('~') {
        Some(base) => base.to_string(),
        None => format!("{id}~"),
    }
}

impl LFunctionDescriptor {
    pub fn zeta(id: impl Into<String>) -> Self {
        let id = id.into();
        LFunctionDescriptor {
            contragredient_id: id.clone(),
            id,
            rank: 1,
            conductor: 1,
            log_conductor: 0.0,
            spectral_params: vec![Complex64::new(0.0, 0.0)],
            pole_order: 1,
            root_number: Complex64::new(1.0, 0.0),
            self_dual: true,
            ramanujan_bound: 0.0,
            source: Source::Zeta,
            eval: LEval::zeta(),
        }
    }

    /// `L(s, chi)` for the primitive character with Conrey label `label`
    /// mod `modulus`. Modulus 1 gives the Riemann zeta function.
    pub fn dirichlet(id: impl Into<String>, modulus: u64, label: u64) -> Result<Self> {
        let id = id.into();
        if modulus == 1 {
            return Ok(LFunctionDescriptor::zeta(id));
        }
        let chi = characters::character(modulus, label)?;
        if !chi.is_primitive() {
            return Err(Error::NotPrimitive { modulus, label });
        }
        Ok(Self::from_character(id, chi))
    }

    fn from_character(id: String, chi: Character) -> Self {
        let w = characters::root_number(&chi).expect("primitive");
        let self_dual = chi.is_real();
        let q = chi.modulus();
        LFunctionDescriptor {
            contragredient_id: if self_dual { id.clone() } else { dual_id(&id) },
            id,
            rank: 1,
            conductor: q,
            log_conductor: (q as f64).ln(),
            spectral_params: vec![Complex64::new(chi.parity() as f64, 0.0)],
            pole_order: 0,
            root_number: w,
            self_dual,
            ramanujan_bound: 0.0,
            eval: LEval::dirichlet(&chi),
            source: Source::Dirichlet(chi),
        }
    }

    /// A descriptor backed only by a finite list of coefficients. It can be
    /// used in the coefficient calculus and evaluated right of `1 + theta`,
    /// but not by the zero engine.
    pub fn series(
        id: impl Into<String>,
        conductor: u64,
        spectral_params: Vec<Complex64>,
        root_number: Complex64,
        ramanujan_bound: f64,
        coeffs: Vec<Complex64>,
    ) -> Result<Self> {
        let id = id.into();
        if spectral_params.is_empty() || conductor == 0 {
            return Err(Error::InvalidInput("series descriptor needs rank >= 1 and conductor >= 1".into()));
        }
        if !(0.0..0.5).contains(&ramanujan_bound) {
            return Err(Error::InvalidInput("ramanujan bound must lie in [0, 1/2)".into()));
        }
        if (root_number.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput("root number must have modulus 1".into()));
        }
        let coeffs = Arc::new(coeffs);
        Ok(LFunctionDescriptor {
            contragredient_id: dual_id(&id),
            id,
            rank: spectral_params.len() as u32,
            conductor,
            log_conductor: (conductor as f64).ln(),
            spectral_params,
            pole_order: 0,
            root_number,
            self_dual: false,
            ramanujan_bound,
            eval: LEval::series(coeffs.clone(), 1.0 + ramanujan_bound),
            source: Source::Series(coeffs),
        })
    }

    /// The contragredient descriptor.
    pub fn dual(&self) -> Self {
        if self.self_dual {
            return self.clone();
        }
        match &self.source {
            Source::Zeta => self.clone(),
            Source::Dirichlet(chi) => {
                let mut d = Self::from_character(self.contragredient_id.clone(), chi.conj());
                d.contragredient_id = self.id.clone();
                d
            }
            Source::Series(c) => {
                let conj: Vec<Complex64> = c.iter().map(|z| z.conj()).collect();
                let mut d = Self::series(
                    self.contragredient_id.clone(),
                    self.conductor,
                    self.spectral_params.iter().map(|m| m.conj()).collect(),
                    self.root_number.conj(),
                    self.ramanujan_bound,
                    conj,
                )
                .expect("dual of valid data");
                d.contragredient_id = self.id.clone();
                d
            }
        }
    }

    /// `lambda(n)`, or `None` past the available range.
    pub fn lambda(&self, n: u64) -> Option<Complex64> {
        if n == 0 {
            return None;
        }
        match &self.source {
            Source::Zeta => Some(Complex64::new(1.0, 0.0)),
            Source::Dirichlet(chi) => Some(chi.value(n)),
            Source::Series(c) => c.get(n as usize - 1).copied(),
        }
    }

    /// `lambda(1..=n)`.
    pub fn coefficients(&self, n: usize) -> Result<Vec<Complex64>> {
        if let Source::Series(c) = &self.source {
            if c.len() < n {
                return Err(Error::OracleRange { lfunc: self.id.clone(), needed: n, available: c.len() });
            }
        }
        Ok((1..=n as u64).map(|k| self.lambda(k).expect("in range")).collect())
    }

    pub fn gamma_data(&self) -> GammaData {
        GammaData { log_conductor: self.log_conductor, mu: self.spectral_params.clone(), root_number: self.root_number }
    }

    pub fn evaluator(&self) -> &LEval {
        &self.eval
    }

    pub fn is_series_only(&self) -> bool {
        matches!(self.source, Source::Series(_))
    }

    pub fn kind_name(&self) -> &'static str {
        match self.source {
            Source::Zeta => "zeta",
            Source::Dirichlet(_) => "dirichlet",
            Source::Series(_) => "series",
        }
    }
}
