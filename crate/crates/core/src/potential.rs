//! Parity-invariant potentials V(x) = Σ A_k |x|^{b_k}.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonomialTerm {
    pub coeff: f64,
    pub exponent: u32,
}

/// A sum of positive monomials in |x|, exponents strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialPotential {
    terms: Vec<MonomialTerm>,
}

impl MonomialPotential {
    pub fn new(terms: impl IntoIterator<Item = (f64, u32)>) -> Result<Self> {
        let mut terms: Vec<MonomialTerm> = terms
            .into_iter()
            .map(|(coeff, exponent)| MonomialTerm { coeff, exponent })
            .collect();
        if terms.is_empty() {
            return Err(Error::InvalidPotential("at least one term is required".into()));
        }
        for t in &terms {
            if !(t.coeff.is_finite() && t.coeff > 0.0) {
                return Err(Error::InvalidPotential(format!(
                    "coefficient {} must be positive and finite",
                    t.coeff
                )));
            }
            if t.exponent == 0 {
                return Err(Error::InvalidPotential("exponents must be at least 1".into()));
            }
        }
        terms.sort_by_key(|t| t.exponent);
        if terms.windows(2).any(|w| w[0].exponent == w[1].exponent) {
            return Err(Error::InvalidPotential("repeated exponent".into()));
        }
        Ok(Self { terms })
    }

    pub fn monomial(coeff: f64, exponent: u32) -> Result<Self> {
        Self::new([(coeff, exponent)])
    }

    /// ½x²
    pub fn harmonic() -> Self {
        Self::monomial(0.5, 2).expect("valid preset")
    }

    /// x⁴
    pub fn quartic() -> Self {
        Self::monomial(1.0, 4).expect("valid preset")
    }

    /// |x|³
    pub fn cubic() -> Self {
        Self::monomial(1.0, 3).expect("valid preset")
    }

    pub fn terms(&self) -> &[MonomialTerm] {
        &self.terms
    }

    pub fn max_exponent(&self) -> u32 {
        self.terms.last().map_or(0, |t| t.exponent)
    }

    pub fn single_term(&self) -> Option<MonomialTerm> {
        match self.terms.as_slice() {
            [t] => Some(*t),
            _ => None,
        }
    }

    /// True for exactly ½x², the case with a closed-form reference spectrum.
    pub fn is_harmonic(&self) -> bool {
        self.single_term()
            == Some(MonomialTerm {
                coeff: 0.5,
                exponent: 2,
            })
    }

    /// Same exponents, every coefficient multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.terms.iter().map(|t| (t.coeff * factor, t.exponent)))
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coeff * x.abs().powi(t.exponent as i32))
            .sum()
    }
}

impl fmt::Display for MonomialPotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}*|x|^{}", t.coeff, t.exponent)?;
        }
        Ok(())
    }
}

fn parse_coeff(s: &str) -> Result<f64> {
    let bad = || Error::InvalidPotential(format!("bad coefficient `{s}`"));
    let v = match s.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num.trim().parse().map_err(|_| bad())?;
            let den: f64 = den.trim().parse().map_err(|_| bad())?;
            num / den
        }
        None => s.parse().map_err(|_| bad())?,
    };
    Ok(v)
}

/// Grammar: `A1*|x|^b1 [+ A2*|x|^b2 ...]`. The coefficient and `*` may be
/// omitted (meaning 1) and may be written as a fraction `p/q`.
impl FromStr for MonomialPotential {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::InvalidPotential("empty potential".into()));
        }
        let mut terms = Vec::new();
        for raw in compact.split('+') {
            let bad = || Error::InvalidPotential(format!("bad term `{raw}`"));
            let (coeff, power) = match raw.split_once("|x|") {
                Some((c, p)) => (c, p),
                None => return Err(bad()),
            };
            let coeff = match coeff {
                "" => 1.0,
                c => parse_coeff(c.strip_suffix('*').ok_or_else(bad)?)?,
            };
            let exponent: u32 = power.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?;
            terms.push((coeff, exponent));
        }
        Self::new(terms)
    }
}

/// The three potentials tabulated in the reference results, with the Gaussian
/// width each was computed at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Harmonic,
    Quartic,
    Cubic,
}

impl Preset {
    pub fn potential(self) -> MonomialPotential {
        match self {
            Preset::Harmonic => MonomialPotential::harmonic(),
            Preset::Quartic => MonomialPotential::quartic(),
            Preset::Cubic => MonomialPotential::cubic(),
        }
    }

    pub fn default_width(self) -> f64 {
        match self {
            Preset::Harmonic => 1.0,
            Preset::Quartic | Preset::Cubic => 2.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Preset::Harmonic => "harmonic",
            Preset::Quartic => "quartic",
            Preset::Cubic => "cubic",
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "harmonic" => Ok(Preset::Harmonic),
            "quartic" => Ok(Preset::Quartic),
            "cubic" => Ok(Preset::Cubic),
            other => Err(Error::InvalidPotential(format!("unknown preset `{other}`"))),
        }
    }
}
