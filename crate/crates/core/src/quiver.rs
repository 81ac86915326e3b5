//! Quivers, dimension vectors and stability parameters.
//!
//! Everything here is plain integer combinatorics: the Euler form, the
//! expected dimension of the moduli space, canonical stability, coprimality
//! and the enumeration of forbidden subdimension vectors that feed the
//! tautological relations of the Chow ring.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num::integer::{gcd, Integer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite quiver given by its vertex count and an ordered arrow list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::input("a quiver needs at least one vertex"));
        }
        if let Some(&(s, t)) = arrows
            .iter()
            .find(|&&(s, t)| s >= vertex_count || t >= vertex_count)
        {
            return Err(Error::input(format!(
                "arrow {s} -> {t} has an endpoint outside 0..{vertex_count}"
            )));
        }
        Ok(Quiver {
            vertex_count,
            arrows,
        })
    }

    /// The generalised Kronecker quiver: two vertices and `m` arrows `0 -> 1`.
    pub fn kronecker(m: usize) -> Self {
        Quiver {
            vertex_count: 2,
            arrows: vec![(0, 1); m],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// Kahn's algorithm; loops count as cycles.
    pub fn is_acyclic(&self) -> bool {
        let n = self.vertex_count;
        let mut indegree = vec![0usize; n];
        for &(_, t) in &self.arrows {
            indegree[t] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for &(s, t) in &self.arrows {
                if s == v {
                    indegree[t] -= 1;
                    if indegree[t] == 0 {
                        queue.push_back(t);
                    }
                }
            }
        }
        seen == n
    }

    fn check_len(&self, len: usize, what: &str) -> Result<()> {
        if len != self.vertex_count {
            return Err(Error::input(format!(
                "{what} has length {len}, quiver has {} vertices",
                self.vertex_count
            )));
        }
        Ok(())
    }

    /// The Euler form `<d,e> = sum_i d_i e_i - sum_a d_s(a) e_t(a)`.
    pub fn euler_form(&self, d: &DimVector, e: &DimVector) -> Result<i64> {
        self.check_len(d.len(), "first dimension vector")?;
        self.check_len(e.len(), "second dimension vector")?;
        Ok(self.euler_form_raw(&d.to_i64(), &e.to_i64()))
    }

    fn euler_form_raw(&self, d: &[i64], e: &[i64]) -> i64 {
        let diagonal: i64 = d.iter().zip(e).map(|(x, y)| x * y).sum();
        let arrows: i64 = self.arrows.iter().map(|&(s, t)| d[s] * e[t]).sum();
        diagonal - arrows
    }

    /// `1 - <d,d>`, the dimension of the stable moduli space when nonempty.
    pub fn expected_dimension(&self, d: &DimVector) -> Result<i64> {
        Ok(1 - self.euler_form(d, d)?)
    }

    /// The primitive integer multiple of `x -> <d,x> - <x,d>`.
    ///
    /// Fails when the functional vanishes identically; the caller then has to
    /// supply a stability parameter explicitly.
    pub fn canonical_stability(&self, d: &DimVector) -> Result<Stability> {
        self.check_len(d.len(), "dimension vector")?;
        let dv = d.to_i64();
        let n = self.vertex_count;
        let raw: Vec<i64> = (0..n)
            .map(|i| {
                let mut unit = vec![0i64; n];
                unit[i] = 1;
                self.euler_form_raw(&dv, &unit) - self.euler_form_raw(&unit, &dv)
            })
            .collect();
        let content = raw.iter().fold(0i64, |g, &x| gcd(g, x));
        if content == 0 {
            return Err(Error::input(
                "canonical stability vanishes for this dimension vector; supply theta explicitly",
            ));
        }
        Ok(Stability(raw.into_iter().map(|x| x / content).collect()))
    }

    fn check_stability(&self, d: &DimVector, theta: &Stability) -> Result<()> {
        self.check_len(d.len(), "dimension vector")?;
        self.check_len(theta.len(), "stability parameter")?;
        if theta.eval(d) != 0 {
            return Err(Error::input(format!(
                "stability {theta} does not vanish on d = {d}"
            )));
        }
        Ok(())
    }

    /// True iff no proper nonzero subdimension vector is killed by `theta`.
    pub fn is_coprime(&self, d: &DimVector, theta: &Stability) -> Result<bool> {
        self.check_stability(d, theta)?;
        Ok(d.proper_subvectors().all(|sub| theta.eval(&sub) != 0))
    }

    /// All proper nonzero `d' <= d` with `theta(d') > 0`, lexicographically.
    pub fn forbidden_vectors(&self, d: &DimVector, theta: &Stability) -> Result<Vec<DimVector>> {
        self.check_stability(d, theta)?;
        Ok(d.proper_subvectors()
            .filter(|sub| theta.eval(sub) > 0)
            .collect())
    }
}

/// A dimension vector: one nonnegative rank per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVector(pub Vec<u32>);

impl DimVector {
    pub fn new(entries: Vec<u32>) -> Self {
        DimVector(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn to_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&x| x as i64).collect()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &DimVector) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Gcd of the entries.
    pub fn content(&self) -> u32 {
        self.0.iter().fold(0u32, |g, &x| g.gcd(&x))
    }

    /// Every `d'` in the box `prod [0, d_i]`, in lexicographic order.
    pub fn box_vectors(&self) -> impl Iterator<Item = DimVector> + '_ {
        let total: usize = self.0.iter().map(|&x| x as usize + 1).product();
        (0..total).map(move |mut index| {
            let mut entries = vec![0u32; self.len()];
            for (slot, &bound) in entries.iter_mut().zip(&self.0).rev() {
                let radix = bound as usize + 1;
                *slot = (index % radix) as u32;
                index /= radix;
            }
            DimVector(entries)
        })
    }

    /// The box minus `0` and `self`.
    pub fn proper_subvectors(&self) -> impl Iterator<Item = DimVector> + '_ {
        self.box_vectors()
            .filter(move |sub| !sub.is_zero() && sub != self)
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.0.iter())
    }
}

/// A stability parameter, read as the functional `e -> sum_i theta_i e_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Stability(pub Vec<i64>);

impl Stability {
    pub fn new(entries: Vec<i64>) -> Self {
        Stability(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn eval(&self, e: &DimVector) -> i64 {
        self.0.iter().zip(&e.0).map(|(t, &x)| t * x as i64).sum()
    }
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.0.iter())
    }
}

/// The twist fixing the universal representation: an integer vector `a`
/// with `sum_i a_i d_i = 1`. It contributes the linear relation
/// `sum_i a_i c_1(U_i) = 0` to the Chow ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Normalization(pub Vec<i64>);

impl Normalization {
    pub fn new(entries: Vec<i64>, d: &DimVector) -> Result<Self> {
        if entries.len() != d.len() {
            return Err(Error::input("normalization length differs from dimension vector"));
        }
        let pairing: i64 = entries.iter().zip(&d.0).map(|(a, &x)| a * x as i64).sum();
        if pairing != 1 {
            return Err(Error::input(format!(
                "normalization must pair to 1 with d, got {pairing}"
            )));
        }
        Ok(Normalization(entries))
    }

    /// A normalization obtained from the extended Euclidean algorithm on the
    /// entries of `d`, which must be indivisible.
    pub fn for_dims(d: &DimVector) -> Result<Self> {
        let mut g = 0i64;
        let mut coeffs: Vec<i64> = Vec::with_capacity(d.len());
        for &x in &d.0 {
            let ext = g.extended_gcd(&(x as i64));
            for c in coeffs.iter_mut() {
                *c *= ext.x;
            }
            coeffs.push(ext.y);
            g = ext.gcd;
        }
        if g != 1 {
            return Err(Error::assumption(format!(
                "dimension vector {d} is not indivisible, so no universal representation exists"
            )));
        }
        Normalization::new(coeffs, d)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.0.iter())
    }
}

fn write_tuple<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    items: impl Iterator<Item = T>,
) -> fmt::Result {
    f.write_str("(")?;
    for (k, x) in items.enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str(")")
}

/// JSON description of a moduli problem:
/// `{"vertices": n, "arrows": [[s,t], ...], "d": [...], "theta": [...]}`,
/// with `theta` optional (canonical stability when omitted).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverSpec {
    pub vertices: usize,
    pub arrows: Vec<[usize; 2]>,
    pub d: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<i64>>,
}

impl QuiverSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::input(format!("invalid quiver spec: {e}")))
    }

    /// Validated quiver, dimension vector and stability.
    pub fn resolve(&self) -> Result<(Quiver, DimVector, Stability)> {
        let quiver = Quiver::new(self.vertices, self.arrows.iter().map(|&[s, t]| (s, t)).collect())?;
        let d = DimVector(self.d.clone());
        if d.len() != self.vertices {
            return Err(Error::input(format!(
                "d has {} entries for {} vertices",
                d.len(),
                self.vertices
            )));
        }
        if d.is_zero() {
            return Err(Error::input("d must have a positive entry"));
        }
        let theta = match &self.theta {
            Some(t) => Stability(t.clone()),
            None => quiver.canonical_stability(&d)?,
        };
        quiver.is_coprime(&d, &theta)?;
        Ok((quiver, d, theta))
    }
}

/// Quiver, dimension vector and canonical stability of a Kronecker moduli
/// space `K_m(d,e)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kronecker {
    pub m: u32,
    pub quiver: Quiver,
    pub dims: DimVector,
    pub theta: Stability,
}

impl Kronecker {
    /// Whether `gcd(d,e) = 1`, the standing assumption for moduli use.
    pub fn is_primitive(&self) -> bool {
        self.dims.content() == 1
    }
}

pub fn kronecker(m: u32, d: u32, e: u32) -> Result<Kronecker> {
    if m == 0 {
        return Err(Error::input("the Kronecker quiver needs m >= 1 arrows"));
    }
    if d == 0 && e == 0 {
        return Err(Error::input("dimension vector (0,0) has no moduli"));
    }
    let quiver = Quiver::kronecker(m as usize);
    let dims = DimVector(vec![d, e]);
    let theta = quiver.canonical_stability(&dims)?;
    Ok(Kronecker {
        m,
        quiver,
        dims,
        theta,
    })
}

/// Closure of `(d,e)` under duality `(d,e) -> (e,d)` and periodicity
/// `(d,e) -> (me-d, e)`, restricted to pairs with entries in `0..=bound`.
///
/// Periodicity keeps the second entry: this is the map preserving
/// `mde - d^2 - e^2`. Sending `(d,e)` to `(me-d, d)` instead would not, e.g.
/// `K_3(2,3)` would be matched with `(7,2)` of negative expected dimension.
pub fn duality_periodicity_orbit(m: u32, d: u32, e: u32, bound: u32) -> BTreeSet<(u32, u32)> {
    let mut orbit = BTreeSet::new();
    let mut queue = VecDeque::new();
    if d <= bound && e <= bound {
        orbit.insert((d, e));
        queue.push_back((d, e));
    }
    while let Some((x, y)) = queue.pop_front() {
        let mut next = vec![(y, x)];
        let shifted = m as i64 * y as i64 - x as i64;
        if shifted >= 0 {
            next.push((shifted as u32, y));
        }
        for pair in next {
            if pair.0 <= bound && pair.1 <= bound && orbit.insert(pair) {
                queue.push_back(pair);
            }
        }
    }
    orbit
}
