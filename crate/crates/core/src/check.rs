//! Self-check suite run by the `check` command.

use std::time::Instant;

use num::{BigInt, BigRational, One};

use crate::chow::{BuildOptions, Presentation};
use crate::error::Result;
use crate::invariants::{orbit_consistency, InvariantReport, ReportOptions};
use crate::polyring::todd_coefficients;
use crate::quiver::kronecker;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

#[derive(Debug, Clone)]
pub struct CheckOptions {
    pub level: Level,
    /// Also run the dimension-18 case `K_5(2,3)`.
    pub extended: bool,
    /// Perturb this coefficient of the Todd series; every Hilbert and
    /// `chi(O)` check is then expected to fail.
    pub tamper_todd: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

/// Published invariants of a Kronecker moduli space.
struct KnownRow {
    m: u32,
    d: u32,
    e: u32,
    dimension: u32,
    degree: &'static str,
    chi_top: i64,
    hilbert: &'static [&'static str],
    numerator: &'static [&'static str],
}

const ROWS: [KnownRow; 4] = [
    KnownRow {
        m: 3,
        d: 2,
        e: 3,
        dimension: 6,
        degree: "57",
        chi_top: 13,
        hilbert: &["1", "20", "148", "664", "2206", "5999", "14140"],
        numerator: &["1", "13", "29", "13", "1"],
    },
    KnownRow {
        m: 4,
        d: 2,
        e: 3,
        dimension: 12,
        degree: "119020",
        chi_top: 58,
        hilbert: &[],
        numerator: &[
            "1", "113", "2472", "16394", "40530", "40530", "16394", "2472", "113", "1",
        ],
    },
    KnownRow {
        m: 3,
        d: 3,
        e: 4,
        dimension: 12,
        degree: "1654983",
        chi_top: -1,
        hilbert: &[],
        numerator: &["1", "253", "9842", "105014", "401785", "621193"],
    },
    KnownRow {
        m: 5,
        d: 2,
        e: 3,
        dimension: 18,
        degree: "720578490",
        chi_top: -1,
        hilbert: &["1", "500", "51920", "2058485"],
        numerator: &[],
    },
];

fn big(s: &str) -> BigInt {
    s.parse().expect("literal integer")
}

fn todd_series(options: &CheckOptions, n: usize) -> Option<Vec<BigRational>> {
    options.tamper_todd.map(|k| {
        let mut coeffs = todd_coefficients(n);
        if k < coeffs.len() {
            coeffs[k] += BigRational::new(BigInt::one(), BigInt::from(1000));
        }
        coeffs
    })
}

fn report(m: u32, d: u32, e: u32, options: &CheckOptions) -> Result<(Presentation, InvariantReport)> {
    let k = kronecker(m, d, e)?;
    let p = Presentation::build(&k.quiver, &k.dims, &k.theta, None, &BuildOptions::default())?;
    let r = InvariantReport::compute(
        &p,
        &ReportOptions {
            todd_series: todd_series(options, p.dimension() as usize),
            ..ReportOptions::default()
        },
    )?;
    Ok((p, r))
}

/// Problems with a report against the published row, empty when it matches.
fn compare_row(row: &KnownRow, r: &InvariantReport) -> Vec<String> {
    let mut problems = Vec::new();
    if r.dimension != row.dimension {
        problems.push(format!("dimension {} != {}", r.dimension, row.dimension));
    }
    if r.degree != big(row.degree) {
        problems.push(format!("degree {} != {}", r.degree, row.degree));
    }
    if row.chi_top >= 0 && r.chi_top != BigRational::from_integer(row.chi_top.into()) {
        problems.push(format!("chi_top {} != {}", r.chi_top, row.chi_top));
    }
    let prefix = |got: &[BigInt], want: &[&str]| {
        got.len() >= want.len() && got.iter().zip(want).all(|(g, w)| *g == big(w))
    };
    if !prefix(&r.hilbert_values, row.hilbert) {
        problems.push("Hilbert values differ".to_string());
    }
    if !prefix(&r.hilbert_numerator, row.numerator) {
        problems.push("Hilbert numerator differs".to_string());
    }
    if !row.numerator.is_empty() && !r.numerator_is_palindromic() {
        problems.push("numerator is not palindromic".to_string());
    }
    let m = row.m as i64;
    if r.chi_t != BigRational::from_integer((m * m - 1).into()) {
        problems.push(format!("chi(T) {} != {}", r.chi_t, m * m - 1));
    }
    if r.chi_o != BigRational::one() {
        problems.push(format!("chi(O) {} != 1", r.chi_o));
    }
    problems
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Closed forms for `Gr(e, m)` with its Pluecker polarization.
fn compare_grassmannian(m: u32, e: u32, r: &InvariantReport) -> Vec<String> {
    let (m, e) = (m as u64, e as u64);
    let dim = e * (m - e);
    let factorial = |n: u64| (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k));
    // (dim)! prod_{i<e} i! / (m-e+i)!
    let degree = (0..e).fold(BigRational::from_integer(factorial(dim)), |acc, i| {
        acc * BigRational::new(factorial(i), factorial(m - e + i))
    });
    // rectangular Schur module dimension by the hook-content formula
    let sections = |n: u64| {
        let mut x = BigRational::one();
        for i in 0..e {
            for j in 0..n {
                let content = BigInt::from(m + j) - BigInt::from(i);
                let hook = BigInt::from(n - j + e - i - 1);
                x *= BigRational::new(content, hook);
            }
        }
        x.to_integer()
    };
    let mut problems = Vec::new();
    if r.dimension as u64 != dim {
        problems.push(format!("dimension {} != {dim}", r.dimension));
    }
    if r.index != Some(BigInt::from(m)) {
        problems.push(format!("index {:?} != {m}", r.index));
    }
    if BigRational::from_integer(r.degree.clone()) != degree {
        problems.push(format!("degree {} != {degree}", r.degree));
    }
    if r.chi_top != BigRational::from_integer(binomial(m, e)) {
        problems.push(format!("chi_top {} != C({m},{e})", r.chi_top));
    }
    for (n, v) in r.hilbert_values.iter().enumerate() {
        if *v != sections(n as u64) {
            problems.push(format!("chi(O({n})) {v} != {}", sections(n as u64)));
        }
    }
    if r.chi_t != BigRational::from_integer(BigInt::from(m * m - 1)) {
        problems.push(format!("chi(T) {} != {}", r.chi_t, m * m - 1));
    }
    problems
}

fn timed(name: String, f: impl FnOnce() -> Result<Vec<String>>) -> Outcome {
    let start = Instant::now();
    let (passed, detail) = match f() {
        Ok(problems) if problems.is_empty() => (true, String::new()),
        Ok(problems) => (false, problems.join("; ")),
        Err(e) => (false, e.to_string()),
    };
    Outcome {
        name,
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

pub fn run(options: &CheckOptions, mut progress: impl FnMut(&Outcome)) -> Vec<Outcome> {
    let mut outcomes = Vec::new();
    let mut push = |o: Outcome| {
        progress(&o);
        outcomes.push(o);
    };
    for (m, e) in [(3, 1), (4, 2), (5, 2)] {
        push(timed(format!("K_{m}(1,{e}) against Gr({e},{m})"), || {
            let (_, r) = report(m, 1, e, options)?;
            Ok(compare_grassmannian(m, e, &r))
        }));
    }
    let rows: Vec<&KnownRow> = ROWS
        .iter()
        .filter(|row| match options.level {
            Level::Quick => row.dimension <= 6,
            Level::Full => row.dimension <= 12 || options.extended,
        })
        .collect();
    for row in rows {
        push(timed(format!("K_{}({},{}) invariants", row.m, row.d, row.e), || {
            let (p, r) = report(row.m, row.d, row.e, options)?;
            let mut problems = compare_row(row, &r);
            if row.dimension <= 6 && p.point_class_side(false)? != p.point_class_side(true)? {
                problems.push("point class expressions disagree".to_string());
            }
            Ok(problems)
        }));
    }
    if options.level == Level::Full {
        for (m, d, e, bound) in [(3, 2, 3, 7), (4, 2, 3, 5)] {
            push(timed(format!("K_{m}({d},{e}) duality/periodicity orbit"), || {
                orbit_consistency(m, d, e, bound).map(|_| Vec::new())
            }));
        }
    }
    outcomes
}
