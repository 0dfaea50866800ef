//! Exact point sets and metric spaces.
//!
//! Every distance comparison in the crate goes through [`MetricSpace`]. Euclidean
//! instances keep fixed-point integer coordinates and compare squared distances as
//! `i128`; general instances keep rational distances and compare their ranks. In
//! both cases the comparison key for a pair is precomputed, so `d(u,v) < d(x,y)`
//! is a single integer comparison and never involves floating point.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest accepted magnitude of a scaled coordinate.
pub const MAX_COORDINATE: i64 = 1 << 53;

/// Largest accepted dimension; keeps every squared distance inside `i128`.
pub const MAX_DIMENSION: usize = 1 << 16;

/// Points with exact integer coordinates. A coordinate `c` stands for the
/// decimal value `c / 10^scale`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EuclideanSpace {
    dimension: usize,
    scale: u32,
    coords: Vec<i64>,
    labels: Option<Vec<String>>,
}

impl EuclideanSpace {
    pub fn new(dimension: usize, scale: u32, points: Vec<Vec<i64>>) -> Result<Self> {
        Self::with_labels(dimension, scale, points, None)
    }

    pub fn with_labels(
        dimension: usize,
        scale: u32,
        points: Vec<Vec<i64>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if dimension == 0 || dimension > MAX_DIMENSION {
            return Err(Error::InvalidParameter(format!(
                "dimension must be in 1..={MAX_DIMENSION}, got {dimension}"
            )));
        }
        if let Some(l) = &labels {
            if l.len() != points.len() {
                return Err(Error::InvalidParameter(format!(
                    "{} labels for {} points",
                    l.len(),
                    points.len()
                )));
            }
        }
        let mut coords = Vec::with_capacity(points.len() * dimension);
        for (i, p) in points.iter().enumerate() {
            if p.len() != dimension {
                return Err(Error::DimensionMismatch {
                    point: i,
                    expected: dimension,
                    found: p.len(),
                });
            }
            for &c in p {
                if c.unsigned_abs() > MAX_COORDINATE as u64 {
                    return Err(Error::CoordinateOverflow {
                        value: c.to_string(),
                    });
                }
            }
            coords.extend_from_slice(p);
        }
        let space = EuclideanSpace {
            dimension,
            scale,
            coords,
            labels,
        };
        let mut order: Vec<usize> = (0..space.len()).collect();
        order.sort_by(|&a, &b| space.point(a).cmp(space.point(b)).then(a.cmp(&b)));
        for w in order.windows(2) {
            if space.point(w[0]) == space.point(w[1]) {
                let (first, second) = (w[0].min(w[1]), w[0].max(w[1]));
                return Err(Error::DuplicatePoint { first, second });
            }
        }
        Ok(space)
    }

    /// Builds a space from decimal strings, converting each value to an integer
    /// by multiplying with `10^scale`. Without an explicit scale the smallest
    /// scale that represents every value exactly is used.
    pub fn from_decimals(
        dimension: usize,
        scale: Option<u32>,
        points: &[Vec<String>],
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let parsed: Vec<Vec<Decimal>> = points
            .iter()
            .map(|p| p.iter().map(|s| Decimal::parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let scale = match scale {
            Some(s) => s,
            None => parsed
                .iter()
                .flatten()
                .map(|d| d.min_scale())
                .max()
                .unwrap_or(0),
        };
        let ints = parsed
            .iter()
            .map(|p| p.iter().map(|d| d.to_scaled_i64(scale)).collect())
            .collect::<Result<Vec<Vec<i64>>>>()?;
        Self::with_labels(dimension, scale, ints, labels)
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dimension
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn point(&self, i: usize) -> &[i64] {
        &self.coords[i * self.dimension..(i + 1) * self.dimension]
    }

    pub fn points(&self) -> impl Iterator<Item = &[i64]> {
        self.coords.chunks(self.dimension)
    }

    pub fn distance_squared(&self, u: usize, v: usize) -> i128 {
        self.point(u)
            .iter()
            .zip(self.point(v))
            .map(|(&a, &b)| {
                let d = a as i128 - b as i128;
                d * d
            })
            .sum()
    }

    /// The coordinate rendered back as a decimal string in user units.
    pub fn coordinate_decimal(&self, point: usize, axis: usize) -> String {
        format_scaled(self.point(point)[axis], self.scale)
    }

    /// Approximate coordinate in user units, for rendering only.
    pub fn coordinate_f64(&self, point: usize, axis: usize) -> f64 {
        self.point(point)[axis] as f64 / 10f64.powi(self.scale as i32)
    }
}

fn format_scaled(value: i64, scale: u32) -> String {
    if scale == 0 {
        return value.to_string();
    }
    let neg = value < 0;
    let digits = value.unsigned_abs().to_string();
    let scale = scale as usize;
    let padded = if digits.len() <= scale {
        format!("{}{}", "0".repeat(scale + 1 - digits.len()), digits)
    } else {
        digits
    };
    let (int, frac) = padded.split_at(padded.len() - scale);
    let frac = frac.trim_end_matches('0');
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    s.push_str(int);
    if !frac.is_empty() {
        s.push('.');
        s.push_str(frac);
    }
    s
}

/// An exact decimal `mantissa * 10^exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decimal {
    mantissa: BigInt,
    exponent: i64,
}

impl Decimal {
    /// Parses `-12.5`, `3`, `1e-3` style literals.
    pub fn parse(s: &str) -> Result<Self> {
        let err = || Error::Parse(format!("not a decimal number: {s:?}"));
        let s = s.trim();
        let (body, exp) = match s.find(['e', 'E']) {
            Some(pos) => (
                &s[..pos],
                s[pos + 1..].parse::<i64>().map_err(|_| err())?,
            ),
            None => (s, 0),
        };
        let (neg, body) = match body.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, body.strip_prefix('+').unwrap_or(body)),
        };
        let (int, frac) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int.is_empty() && frac.is_empty() {
            return Err(err());
        }
        if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let digits = format!("{int}{frac}");
        let mut mantissa: BigInt = digits.parse().map_err(|_| err())?;
        if neg {
            mantissa = -mantissa;
        }
        Ok(Decimal {
            mantissa,
            exponent: exp - frac.len() as i64,
        })
    }

    /// Smallest non-negative scale at which this value is an integer.
    pub fn min_scale(&self) -> u32 {
        if self.mantissa.is_zero() {
            return 0;
        }
        let mut m = self.mantissa.clone();
        let mut e = self.exponent;
        let ten = BigInt::from(10);
        while e < 0 && (&m % &ten).is_zero() {
            m /= &ten;
            e += 1;
        }
        if e < 0 {
            (-e) as u32
        } else {
            0
        }
    }

    pub fn to_scaled_i64(&self, scale: u32) -> Result<i64> {
        let shift = self.exponent + scale as i64;
        let ten = BigInt::from(10);
        let value = if shift >= 0 {
            &self.mantissa * num_traits::pow(ten, shift as usize)
        } else {
            let div = num_traits::pow(ten, (-shift) as usize);
            if !(&self.mantissa % &div).is_zero() {
                return Err(Error::Parse(format!(
                    "{} has more than {scale} decimal digits",
                    self.to_rational()
                )));
            }
            &self.mantissa / div
        };
        let out = value.to_i64().filter(|v| v.unsigned_abs() <= MAX_COORDINATE as u64);
        out.ok_or(Error::CoordinateOverflow {
            value: value.to_string(),
        })
    }

    pub fn to_rational(&self) -> BigRational {
        let ten = BigInt::from(10);
        if self.exponent >= 0 {
            BigRational::from_integer(&self.mantissa * num_traits::pow(ten, self.exponent as usize))
        } else {
            BigRational::new(
                self.mantissa.clone(),
                num_traits::pow(ten, (-self.exponent) as usize),
            )
        }
    }
}

/// Parses a rational from `"p/q"`, an integer, or a decimal literal.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let q: BigInt = q
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(p, q));
    }
    Decimal::parse(s).map(|d| d.to_rational())
}

/// Canonical text form of a rational: `"7"` or `"7/3"`.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// One violated metric axiom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Violation {
    NonzeroDiagonal { u: usize },
    Negative { u: usize, v: usize },
    /// Distinct points at distance zero.
    ZeroOffDiagonal { u: usize, v: usize },
    Asymmetric { u: usize, v: usize },
    /// `d(a,c) > d(a,b) + d(b,c)`
    Triangle { a: usize, b: usize, c: usize },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violation(s)", self.violations.len())?;
        if let Some(v) = self.violations.first() {
            write!(f, ", first: {v:?}")?;
        }
        Ok(())
    }
}

/// Checks every metric axiom of a distance matrix. A ragged matrix is a
/// structural error, reported separately from axiom violations.
pub fn validate_metric(dist: &[Vec<BigRational>]) -> Result<ValidationReport> {
    let n = dist.len();
    for (row, r) in dist.iter().enumerate() {
        if r.len() != n {
            return Err(Error::NotSquare {
                row,
                len: r.len(),
                n,
            });
        }
    }
    let mut violations = Vec::new();
    for u in 0..n {
        if !dist[u][u].is_zero() {
            violations.push(Violation::NonzeroDiagonal { u });
        }
        for v in 0..n {
            if u == v {
                continue;
            }
            if dist[u][v].is_negative() {
                violations.push(Violation::Negative { u, v });
            } else if dist[u][v].is_zero() && u < v {
                violations.push(Violation::ZeroOffDiagonal { u, v });
            }
            if u < v && dist[u][v] != dist[v][u] {
                violations.push(Violation::Asymmetric { u, v });
            }
        }
    }
    for a in 0..n {
        for c in 0..n {
            if a == c {
                continue;
            }
            for b in 0..n {
                if b == a || b == c {
                    continue;
                }
                if dist[a][c] > &dist[a][b] + &dist[b][c] {
                    violations.push(Violation::Triangle { a, b, c });
                }
            }
        }
    }
    Ok(ValidationReport { violations })
}

/// An explicit rational distance matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralMetric {
    n: usize,
    dist: Vec<BigRational>,
    validated: bool,
}

impl GeneralMetric {
    /// Validates the matrix; any axiom violation is rejected.
    pub fn new(dist: Vec<Vec<BigRational>>) -> Result<Self> {
        let report = validate_metric(&dist)?;
        if !report.is_valid() {
            return Err(Error::InvalidMetric(report));
        }
        Ok(Self::build(dist, true))
    }

    /// Skips the `O(n^3)` axiom check. Only the shape is checked; the space
    /// remembers that validation was skipped.
    pub fn new_unchecked(dist: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = dist.len();
        for (row, r) in dist.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare {
                    row,
                    len: r.len(),
                    n,
                });
            }
        }
        Ok(Self::build(dist, false))
    }

    pub fn from_integers(dist: Vec<Vec<i64>>) -> Result<Self> {
        Self::new(
            dist.into_iter()
                .map(|r| r.into_iter().map(|x| BigRational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    fn build(dist: Vec<Vec<BigRational>>, validated: bool) -> Self {
        let n = dist.len();
        GeneralMetric {
            n,
            dist: dist.into_iter().flatten().collect(),
            validated,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn distance(&self, u: usize, v: usize) -> &BigRational {
        &self.dist[u * self.n + v]
    }

    pub fn validated(&self) -> bool {
        self.validated
    }

    pub fn rows(&self) -> Vec<Vec<BigRational>> {
        self.dist.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceKind {
    Euclidean(EuclideanSpace),
    General(GeneralMetric),
}

/// A finite metric space with precomputed, order-preserving comparison keys.
#[derive(Debug, Clone)]
pub struct MetricSpace {
    kind: SpaceKind,
    n: usize,
    keys: Vec<i128>,
    /// `by_distance_to[t]` lists all points sorted by distance to `t`, ties by index.
    by_distance_to: Vec<Vec<u32>>,
}

impl PartialEq for MetricSpace {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl From<EuclideanSpace> for MetricSpace {
    fn from(e: EuclideanSpace) -> Self {
        MetricSpace::new(SpaceKind::Euclidean(e))
    }
}

impl From<GeneralMetric> for MetricSpace {
    fn from(g: GeneralMetric) -> Self {
        MetricSpace::new(SpaceKind::General(g))
    }
}

impl MetricSpace {
    pub fn new(kind: SpaceKind) -> Self {
        let (n, keys) = match &kind {
            SpaceKind::Euclidean(e) => {
                let n = e.len();
                let mut keys = vec![0i128; n * n];
                for u in 0..n {
                    for v in u + 1..n {
                        let d = e.distance_squared(u, v);
                        keys[u * n + v] = d;
                        keys[v * n + u] = d;
                    }
                }
                (n, keys)
            }
            SpaceKind::General(g) => {
                let n = g.len();
                let mut distinct: Vec<&BigRational> = g.dist.iter().collect();
                distinct.sort();
                distinct.dedup();
                let keys = g
                    .dist
                    .iter()
                    .map(|d| distinct.binary_search(&d).expect("value present") as i128)
                    .collect();
                (n, keys)
            }
        };
        let by_distance_to = (0..n)
            .map(|t| {
                let mut order: Vec<u32> = (0..n as u32).collect();
                order.sort_by_key(|&x| (keys[x as usize * n + t], x));
                order
            })
            .collect();
        MetricSpace {
            kind,
            n,
            keys,
            by_distance_to,
        }
    }

    pub fn euclidean(dimension: usize, points: Vec<Vec<i64>>) -> Result<Self> {
        Ok(EuclideanSpace::new(dimension, 0, points)?.into())
    }

    /// One-dimensional integer positions.
    pub fn line(positions: &[i64]) -> Result<Self> {
        Self::euclidean(1, positions.iter().map(|&p| vec![p]).collect())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn kind(&self) -> &SpaceKind {
        &self.kind
    }

    pub fn as_euclidean(&self) -> Option<&EuclideanSpace> {
        match &self.kind {
            SpaceKind::Euclidean(e) => Some(e),
            SpaceKind::General(_) => None,
        }
    }

    /// Euclidean dimension, `None` for general metrics.
    pub fn dimension(&self) -> Option<usize> {
        self.as_euclidean().map(|e| e.dimension())
    }

    /// False only for general metrics loaded with validation skipped.
    pub fn validated(&self) -> bool {
        match &self.kind {
            SpaceKind::Euclidean(_) => true,
            SpaceKind::General(g) => g.validated(),
        }
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, n: self.n })
        }
    }

    /// Order-preserving key of `d(u, v)`.
    #[inline]
    pub fn key(&self, u: usize, v: usize) -> i128 {
        self.keys[u * self.n + v]
    }

    /// `d(v, t) < d(u, t)`
    #[inline]
    pub fn closer(&self, v: usize, u: usize, t: usize) -> bool {
        self.key(v, t) < self.key(u, t)
    }

    /// Exact comparison of `d(u,v)` with `d(x,y)`.
    pub fn compare_distances(&self, (u, v): (usize, usize), (x, y): (usize, usize)) -> Result<Ordering> {
        for i in [u, v, x, y] {
            self.check_index(i)?;
        }
        Ok(self.key(u, v).cmp(&self.key(x, y)))
    }

    pub fn distance_squared(&self, u: usize, v: usize) -> Result<i128> {
        self.check_index(u)?;
        self.check_index(v)?;
        match &self.kind {
            SpaceKind::Euclidean(e) => Ok(e.distance_squared(u, v)),
            SpaceKind::General(_) => Err(Error::NotEuclidean),
        }
    }

    /// All points sorted by increasing distance to `t` (so `t` comes first).
    pub fn by_distance_to(&self, t: usize) -> &[u32] {
        &self.by_distance_to[t]
    }
}
