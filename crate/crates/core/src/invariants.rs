//! Numerical invariants derived from the Chow ring: Picard index, the ample
//! generator, degree, Hilbert series and Euler characteristics.

use std::fmt::Write as _;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use rayon::prelude::*;
use serde_json::json;

use crate::chow::{BuildOptions, ChowClass, Presentation};
use crate::error::{Error, Result};
use crate::polyring::{todd_coefficients, Poly};
use crate::quiver::{duality_periodicity_orbit, kronecker, Normalization};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn integral(x: &BigRational, what: &str) -> Result<BigInt> {
    if x.is_integer() {
        Ok(x.to_integer())
    } else {
        Err(Error::structural(format!("{what} = {x} is not an integer")))
    }
}

fn rational_gcd(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    BigRational::new(
        a.numer().gcd(b.numer()),
        a.denom().lcm(b.denom()),
    )
}

/// The chosen ample class `H` together with `c_1(T_X)`.
#[derive(Debug, Clone)]
pub struct Polarization {
    /// `c_1(T_X) = index * H`; `None` when an explicit polarization is not
    /// proportional to `c_1(T_X)`.
    pub index: Option<BigInt>,
    pub h: ChowClass,
    pub c1: ChowClass,
}

/// Coefficients `c_i` with `c_1(T_X) = sum_i c_i x_{i,1}`.
pub fn first_chern_coefficients(p: &Presentation) -> Vec<i64> {
    let d = p.dims().entries();
    let mut c = vec![0i64; d.len()];
    for &(s, t) in p.quiver().arrows() {
        c[t] += d[s] as i64;
        c[s] -= d[t] as i64;
    }
    c
}

fn linear_class(p: &Presentation, coeffs: &[i64]) -> ChowClass {
    let layout = p.layout();
    let terms: Vec<(usize, BigRational)> = coeffs
        .iter()
        .enumerate()
        .filter(|&(i, &c)| c != 0 && layout.dim(i) > 0)
        .map(|(i, &c)| (layout.index(i, 1), q(c)))
        .collect();
    p.normal_form(&Poly::linear(layout.nvars(), &terms))
}

/// Fano index and `H = c_1(T_X) / index`, or the explicit `polarization`
/// `sum_i h_i x_{i,1}` when given.
pub fn picard_index_and_h(p: &Presentation, polarization: Option<&[i64]>) -> Result<Polarization> {
    let c1 = linear_class(p, &first_chern_coefficients(p));
    let dims = p.quotient_dims();
    if let Some(h) = polarization {
        if h.len() != p.dims().len() {
            return Err(Error::input("polarization needs one coefficient per vertex"));
        }
        let h = linear_class(p, h);
        if h.is_zero() {
            return Err(Error::input("polarization is zero in the Chow ring"));
        }
        let index = if dims.get(1) == Some(&1) {
            let ratio = &c1.part(1)[0] / &h.part(1)[0];
            ratio.is_integer().then(|| ratio.to_integer())
        } else {
            None
        };
        return Ok(Polarization { index, h, c1 });
    }
    if dims.get(1) != Some(&1) {
        return Err(Error::assumption(format!(
            "Picard rank is {}, not 1; supply a polarization",
            dims.get(1).copied().unwrap_or(0)
        )));
    }
    // generator of the lattice spanned by the images of the x_{i,1}
    let layout = p.layout();
    let mut generator = BigRational::zero();
    for i in 0..layout.vertex_count() {
        if layout.dim(i) == 0 {
            continue;
        }
        let x = p.normal_form(&Poly::var(layout.nvars(), layout.index(i, 1)));
        generator = rational_gcd(&generator, &x.part(1)[0]);
    }
    if generator.is_zero() {
        return Err(Error::structural("degree-one classes vanish"));
    }
    let ratio = &c1.part(1)[0] / &generator;
    let index = integral(&ratio.abs(), "Fano index")?;
    if index.is_zero() {
        return Err(Error::structural("first Chern class of the tangent bundle vanishes"));
    }
    let h = c1.scale(&BigRational::from_integer(index.clone()).recip());
    Ok(Polarization {
        index: Some(index),
        h,
        c1,
    })
}

/// `int_X H^{dim X}`.
pub fn degree(p: &Presentation, h: &ChowClass) -> Result<BigInt> {
    let top = p.pow(h, p.dimension());
    integral(&p.integrate(&top)?, "degree")
}

/// Hilbert polynomial, values and numerator of the Hilbert series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSeries {
    /// `chi(O(n)) = sum_k coefficients[k] n^k`.
    pub polynomial: Vec<BigRational>,
    pub values: Vec<BigInt>,
    /// Coefficients of `sum_n chi(O(n)) t^n * (1 - t)^{dim + 1}`.
    pub numerator: Vec<BigInt>,
}

impl HilbertSeries {
    pub fn eval(&self, n: i64) -> BigRational {
        let n = q(n);
        self.polynomial
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &n + c)
    }
}

/// Hirzebruch-Riemann-Roch for `O(n) = n H`, with `len` values `n = 0..len`.
pub fn hilbert_series(p: &Presentation, h: &ChowClass, td: &ChowClass, len: usize) -> Result<HilbertSeries> {
    let top = p.dimension() as usize;
    let mut integrals = Vec::with_capacity(top + 1);
    let mut power = p.one_class();
    let mut factorial = BigInt::one();
    for k in 0..=top {
        if k > 0 {
            power = p.mul(&power, h);
            factorial *= BigInt::from(k);
        }
        let moment = p.integrate(&p.mul(&power, td))?;
        integrals.push(moment / BigRational::from_integer(factorial.clone()));
    }
    let mut series = HilbertSeries {
        polynomial: integrals,
        values: Vec::new(),
        numerator: Vec::new(),
    };
    let count = len.max(top + 1);
    let values: Vec<BigInt> = (0..count)
        .into_par_iter()
        .map(|n| integral(&series.eval(n as i64), &format!("chi(O({n}))")))
        .collect::<Result<_>>()?;
    let mut binomials = vec![BigInt::one()];
    for i in 1..=top + 1 {
        let next = &binomials[i - 1] * BigInt::from(top + 2 - i) / BigInt::from(i);
        binomials.push(next);
    }
    let mut numerator: Vec<BigInt> = (0..=top)
        .map(|j| {
            (0..=j).fold(BigInt::zero(), |acc, i| {
                let term = &binomials[i] * &values[j - i];
                if i % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect();
    while numerator.len() > 1 && numerator.last().is_some_and(Zero::is_zero) {
        numerator.pop();
    }
    series.values = values.into_iter().take(len).collect();
    series.numerator = numerator;
    Ok(series)
}

/// `chi(O_X)`, `chi(T_X)` and the topological Euler characteristic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerCharacteristics {
    pub chi_o: BigRational,
    pub chi_t: BigRational,
    pub chi_top: BigRational,
}

pub fn euler_characteristics(p: &Presentation) -> Result<EulerCharacteristics> {
    let ch = p.tangent_character();
    let td = p.todd_class()?;
    let c = p.chern_from_character(&ch)?;
    Ok(EulerCharacteristics {
        chi_o: p.integrate(&td)?,
        chi_t: p.integrate(&p.mul(&ch, &td))?,
        chi_top: p.integrate(&c)?,
    })
}

/// Everything reported for one moduli space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub dimension: u32,
    pub index: Option<BigInt>,
    pub degree: BigInt,
    pub hilbert_values: Vec<BigInt>,
    pub hilbert_numerator: Vec<BigInt>,
    pub chi_o: BigRational,
    pub chi_t: BigRational,
    pub chi_top: BigRational,
    pub quotient_dims: Vec<usize>,
}

/// Inputs for [`InvariantReport::compute`] besides the presentation.
#[derive(Debug, Clone, Default)]
pub struct ReportOptions {
    pub polarization: Option<Vec<i64>>,
    /// Number of Hilbert values; defaults to `dim X + 1`.
    pub series_length: Option<usize>,
    /// Replacement coefficients of `t / (1 - e^{-t})` for the Todd class.
    pub todd_series: Option<Vec<BigRational>>,
}

impl InvariantReport {
    pub fn compute(p: &Presentation, options: &ReportOptions) -> Result<Self> {
        let polarization = picard_index_and_h(p, options.polarization.as_deref())?;
        let ch = p.tangent_character();
        let td = match &options.todd_series {
            Some(coeffs) => p.multiplicative_class(&ch, coeffs)?,
            None => p.multiplicative_class(&ch, &todd_coefficients(p.dimension() as usize))?,
        };
        let c = p.chern_from_character(&ch)?;
        let len = options.series_length.unwrap_or(p.dimension() as usize + 1);
        let hilbert = hilbert_series(p, &polarization.h, &td, len)?;
        Ok(InvariantReport {
            dimension: p.dimension(),
            index: polarization.index,
            degree: degree(p, &polarization.h)?,
            hilbert_values: hilbert.values,
            hilbert_numerator: hilbert.numerator,
            chi_o: p.integrate(&td)?,
            chi_t: p.integrate(&p.mul(&ch, &td))?,
            chi_top: p.integrate(&c)?,
            quotient_dims: p.quotient_dims(),
        })
    }

    /// Name of the first field in which two reports differ.
    pub fn first_difference(&self, other: &InvariantReport) -> Option<&'static str> {
        if self.dimension != other.dimension {
            Some("dimension")
        } else if self.index != other.index {
            Some("index")
        } else if self.degree != other.degree {
            Some("degree")
        } else if self.hilbert_values != other.hilbert_values {
            Some("hilbert_values")
        } else if self.hilbert_numerator != other.hilbert_numerator {
            Some("hilbert_numerator")
        } else if self.chi_o != other.chi_o {
            Some("chi_O")
        } else if self.chi_t != other.chi_t {
            Some("chi_T")
        } else if self.chi_top != other.chi_top {
            Some("chi_top")
        } else if self.quotient_dims != other.quotient_dims {
            Some("quotient_dims")
        } else {
            None
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let strings = |xs: &[BigInt]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        json!({
            "dimension": self.dimension,
            "index": self.index.as_ref().map(|x| x.to_string()),
            "degree": self.degree.to_string(),
            "hilbert_values": strings(&self.hilbert_values),
            "hilbert_numerator": strings(&self.hilbert_numerator),
            "chi_O": self.chi_o.to_string(),
            "chi_T": self.chi_t.to_string(),
            "chi_top": self.chi_top.to_string(),
            "quotient_dims": self.quotient_dims,
        })
    }

    pub fn render_table(&self, label: &str) -> String {
        let join = |xs: &[BigInt]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        let rows: Vec<(&str, String)> = vec![
            ("moduli", label.to_string()),
            ("dimension", self.dimension.to_string()),
            (
                "index",
                self.index.as_ref().map_or("-".to_string(), |x| x.to_string()),
            ),
            ("degree", self.degree.to_string()),
            ("Hilbert series", join(&self.hilbert_values)),
            ("numerator", join(&self.hilbert_numerator)),
            ("chi(O)", self.chi_o.to_string()),
            ("chi(T)", self.chi_t.to_string()),
            ("chi_top", self.chi_top.to_string()),
            (
                "Chow ranks",
                self.quotient_dims.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "),
            ),
        ];
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            writeln!(out, "{k:<width$}  {v}").unwrap();
        }
        out
    }

    /// Whether the numerator reads the same in both directions.
    pub fn numerator_is_palindromic(&self) -> bool {
        self.hilbert_numerator.iter().eq(self.hilbert_numerator.iter().rev())
    }
}

/// Build and report a Kronecker moduli space with canonical stability.
pub fn kronecker_report(m: u32, d: u32, e: u32, normalization: Option<Normalization>) -> Result<InvariantReport> {
    let k = kronecker(m, d, e)?;
    let p = Presentation::build(&k.quiver, &k.dims, &k.theta, normalization, &BuildOptions::default())?;
    InvariantReport::compute(&p, &ReportOptions::default())
}

/// Reports for every pair in the bounded duality/periodicity orbit of
/// `(d, e)`, checked to be identical.
pub fn orbit_consistency(m: u32, d: u32, e: u32, bound: u32) -> Result<Vec<((u32, u32), InvariantReport)>> {
    let orbit: Vec<(u32, u32)> = duality_periodicity_orbit(m, d, e, bound).into_iter().collect();
    let reports: Vec<((u32, u32), InvariantReport)> = orbit
        .iter()
        .map(|&(a, b)| Ok(((a, b), kronecker_report(m, a, b, None)?)))
        .collect::<Result<_>>()?;
    let (first_pair, first) = &reports[0];
    for (pair, report) in &reports[1..] {
        if let Some(field) = first.first_difference(report) {
            return Err(Error::structural(format!(
                "K_{m}{first_pair:?} and K_{m}{pair:?} differ in {field}"
            )));
        }
    }
    Ok(reports)
}
