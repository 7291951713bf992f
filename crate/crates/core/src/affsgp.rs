//! Affine semigroups generated in degree one: Hilbert functions by layered
//! enumeration, Krull dimension, tensor products, free extensions and the
//! Cohen-Macaulay type of normal semigroup rings.
//!
//! Layer `n` is the set of distinct lattice points that are sums of exactly
//! `n` generators. It is built from layer `n - 1` by adding every generator
//! and deduplicating. Points with small coordinates are packed into a single
//! `u128`; otherwise they are stored as boxed coordinate slices.
//!
//! For a normal semigroup the canonical module is the ideal spanned by the
//! lattice points in the relative interior of the cone. A point `p` of that
//! ideal is a minimal generator iff `p - g` is not interior for any generator
//! `g`, i.e. iff for every `g` some facet value of `p` is at most the
//! matching facet value of `g`. Minimal generators have degree at most
//! `dim`, and at most `dim - 1` unless the ring is a polynomial ring, because
//! their degrees are `dim` minus the socle degrees of an Artinian reduction.
//!
//! When the cone is simplicial the type is also available without normality.
//! Let `E` be the generators spanning the extremal rays. The ring is
//! Cohen-Macaulay iff it is free over `k[E]`, iff the Apéry set
//! `{p in S : p - e not in S for all e in E}` has `h_n` elements in each
//! degree `n`; the type is then the number of Apéry elements maximal for the
//! order `p <= q iff q - p in S`.

use std::hash::Hash;

use rayon::prelude::*;
use rustc_hash::FxHashSet;
use thiserror::Error;

use crate::cone::Cone;
use crate::hpoly::{self, HPolyError, HPolynomial, SeriesPrefix};
use crate::linalg;
use crate::scalar::Overflow;
use crate::stats::RingStats;

/// Default cap on the total number of enumerated points.
pub const DEFAULT_POINT_CEILING: u64 = 10_000_000;

/// Environment variable overriding [`DEFAULT_POINT_CEILING`].
pub const POINT_CEILING_ENV: &str = "GORLAB_POINT_CEILING";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AffineError {
    #[error("no generators")]
    Empty,
    #[error("generator {index} has {len} coordinates, expected {expected}")]
    Ragged { index: usize, len: usize, expected: usize },
    #[error("generator {0} is the zero vector")]
    ZeroGenerator(usize),
    #[error("generator {0} has a negative coordinate")]
    NegativeEntry(usize),
    #[error("generator {0} is repeated")]
    Duplicate(usize),
    #[error("generators do not lie on a common affine hyperplane of degree one")]
    NotStandardGraded,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("enumeration exceeded the ceiling of {0} points")]
    ResourceBound(u64),
    #[error("canonical type requires a normality assertion or a simplicial cone")]
    NotNormalAsserted,
    #[error("not Cohen-Macaulay: {apery} Apery elements in degree {degree} against h = {h}")]
    NotCohenMacaulay { degree: usize, apery: usize, h: i64 },
    /// The interior ideal does not behave like the canonical module of a
    /// normal ring, so the normality assertion was false.
    #[error("normality assertion contradicted: {0}")]
    NormalityRefuted(String),
    #[error(transparent)]
    HPoly(#[from] HPolyError),
    #[error(transparent)]
    Overflow(#[from] Overflow),
}

/// Knobs for [`AffineSemigroup::ring_stats`] and
/// [`AffineSemigroup::canonical_type`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineOptions {
    /// Trailing zero h-coefficients required before the h-vector is accepted.
    pub window: usize,
    pub point_ceiling: u64,
    /// Justification that the semigroup ring is normal.
    pub assume_normal: Option<String>,
    /// Justification that the semigroup ring is Cohen-Macaulay.
    pub assume_cm: Option<String>,
    pub compute_type: bool,
    /// Overrides the degree up to which canonical-module generators are
    /// searched.
    pub omega_degree_bound: Option<u32>,
}

impl Default for AffineOptions {
    fn default() -> Self {
        Self {
            window: hpoly::DEFAULT_WINDOW,
            point_ceiling: point_ceiling_from_env(),
            assume_normal: None,
            assume_cm: None,
            compute_type: false,
            omega_degree_bound: None,
        }
    }
}

impl AffineOptions {
    pub fn normal(reason: impl Into<String>) -> Self {
        Self {
            assume_normal: Some(reason.into()),
            ..Self::default()
        }
    }

    pub fn with_type(mut self) -> Self {
        self.compute_type = true;
        self
    }
}

/// [`DEFAULT_POINT_CEILING`] unless the environment overrides it.
pub fn point_ceiling_from_env() -> u64 {
    std::env::var(POINT_CEILING_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_POINT_CEILING)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalType {
    pub type_r: u64,
    /// Degree of each minimal generator of the canonical module, ascending.
    pub omega_degrees: Vec<i64>,
}

impl CanonicalType {
    fn from_degrees(mut omega_degrees: Vec<i64>) -> Self {
        omega_degrees.sort_unstable();
        Self {
            type_r: omega_degrees.len() as u64,
            omega_degrees,
        }
    }
}

/// A pointed affine semigroup whose generators all have degree one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSemigroup {
    ambient_dim: usize,
    generators: Vec<Vec<i64>>,
}

impl AffineSemigroup {
    pub fn new(generators: Vec<Vec<i64>>) -> Result<Self, AffineError> {
        let ambient_dim = generators.first().ok_or(AffineError::Empty)?.len();
        for (index, g) in generators.iter().enumerate() {
            if g.len() != ambient_dim {
                return Err(AffineError::Ragged {
                    index,
                    len: g.len(),
                    expected: ambient_dim,
                });
            }
            if g.iter().any(|&x| x < 0) {
                return Err(AffineError::NegativeEntry(index));
            }
            if g.iter().all(|&x| x == 0) {
                return Err(AffineError::ZeroGenerator(index));
            }
            if generators[..index].contains(g) {
                return Err(AffineError::Duplicate(index));
            }
        }
        let extended: Vec<Vec<i64>> = generators
            .iter()
            .map(|g| g.iter().copied().chain([1]).collect())
            .collect();
        if linalg::rank(&extended)? != linalg::rank(&generators)? {
            return Err(AffineError::NotStandardGraded);
        }
        Ok(Self {
            ambient_dim,
            generators,
        })
    }

    /// Parses one generator per line as whitespace-separated integers.
    /// Blank lines and lines starting with `#` are skipped.
    pub fn from_text(text: &str) -> Result<Self, AffineError> {
        let mut gens = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| AffineError::Parse {
                    line: i + 1,
                    msg: e.to_string(),
                })?;
            gens.push(row);
        }
        Self::new(gens)
    }

    /// The semigroup of the monomials `s t^b`, one per exponent `b`; for
    /// example `[0, 1, 2]` gives `Q[s, st, st^2]`.
    pub fn monomial_curve(exponents: &[i64]) -> Result<Self, AffineError> {
        Self::new(exponents.iter().map(|&b| vec![1, b]).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    /// Rank of the generator matrix.
    pub fn krull_dim(&self) -> u32 {
        linalg::rank(&self.generators).expect("desk-scale entries") as u32
    }

    /// Block direct sum: the semigroup of the tensor product of the rings.
    pub fn tensor(&self, other: &Self) -> Self {
        let (n1, n2) = (self.ambient_dim, other.ambient_dim);
        let left = self.generators.iter().map(|g| {
            let mut v = g.clone();
            v.resize(n1 + n2, 0);
            v
        });
        let right = other.generators.iter().map(|g| {
            let mut v = vec![0; n1];
            v.extend_from_slice(g);
            v
        });
        Self {
            ambient_dim: n1 + n2,
            generators: left.chain(right).collect(),
        }
    }

    /// Adjoins a free variable.
    pub fn free_extension(&self) -> Self {
        self.tensor(&Self {
            ambient_dim: 1,
            generators: vec![vec![1]],
        })
    }

    /// Hilbert function values in degrees `0..=degree`.
    pub fn hilbert_function(&self, degree: usize, point_ceiling: u64) -> Result<SeriesPrefix, AffineError> {
        let mut series = SeriesPrefix::new(vec![1]);
        let mut walk = Walk::new(self, point_ceiling);
        for _ in 0..degree {
            series.push(walk.advance()?.len() as u64);
        }
        Ok(series)
    }

    /// Numeric profile of the semigroup ring. The h-vector is read off once
    /// `window` trailing coefficients vanish, or, for a normal semigroup,
    /// once degree `dim - 1` is reached (the a-invariant is negative, so
    /// `h` has degree below `dim`).
    pub fn ring_stats(&self, opts: &AffineOptions) -> Result<RingStats, AffineError> {
        let (h, ct) = self.analyse(opts, opts.compute_type)?;
        let dim = self.krull_dim();
        let delta = h.delta_value()?;
        let mut provenance = Vec::new();
        if let Some(r) = &opts.assume_normal {
            provenance.push(format!("normal: {r}"));
        }
        if let Some(r) = &opts.assume_cm {
            provenance.push(format!("cohen-macaulay: {r}"));
        }
        let type_r = ct.as_ref().map(|c| c.type_r);
        Ok(RingStats {
            dim,
            e: h.e_value()?,
            a: h.degree() as i64 - dim as i64,
            delta,
            type_r,
            omega_degrees: ct.map(|c| c.omega_degrees),
            gorenstein: h.is_symmetric(),
            almost_gorenstein: type_r.map(|r| delta == r as i64 - 1),
            star: true,
            provenance,
            h: Some(h),
        })
    }

    /// Cohen-Macaulay type: minimal generators of the interior ideal when
    /// normality is asserted, maximal Apéry elements when the cone is
    /// simplicial.
    pub fn canonical_type(&self, opts: &AffineOptions) -> Result<CanonicalType, AffineError> {
        Ok(self.analyse(opts, true)?.1.expect("type requested"))
    }

    fn analyse(&self, opts: &AffineOptions, want_type: bool) -> Result<(HPolynomial, Option<CanonicalType>), AffineError> {
        let normal = opts.assume_normal.is_some();
        let dim = self.krull_dim();
        let mut omega = if want_type && normal { Some(OmegaScan::new(self)?) } else { None };
        let mut series = SeriesPrefix::new(vec![1]);
        let mut walk = Walk::new(self, opts.point_ceiling);
        let mut h: Option<HPolynomial> = None;
        let mut n = 0usize;
        loop {
            if h.is_none() {
                h = if normal && n + 1 >= dim as usize {
                    Some(hpoly::hilbert_to_hvector(&series, dim, 0)?)
                } else {
                    hpoly::hilbert_to_hvector(&series, dim, opts.window).ok()
                };
            }
            let type_done = match (&omega, &h) {
                (None, _) => true,
                (Some(_), None) => false,
                (Some(_), Some(h)) => {
                    let bound = opts
                        .omega_degree_bound
                        .unwrap_or(if h.degree() == 0 { dim } else { dim.saturating_sub(1) });
                    n >= bound as usize
                }
            };
            if h.is_some() && type_done {
                break;
            }
            n += 1;
            let layer = walk.advance()?;
            series.push(layer.len() as u64);
            if let Some(scan) = omega.as_mut() {
                scan.visit(n as u32, layer);
            }
        }
        let h = h.expect("loop exits with h");
        let ct = match omega {
            Some(scan) => Some(check_interior(&h, dim, CanonicalType::from_degrees(scan.degrees))?),
            None if want_type => Some(self.apery_type(&h, opts.point_ceiling)?),
            None => None,
        };
        Ok((h, ct))
    }

    fn apery_type(&self, h: &HPolynomial, ceiling: u64) -> Result<CanonicalType, AffineError> {
        let cone = Cone::<i64>::from_generators(&self.generators)?;
        let rank = cone.rank();
        let facets = cone.ambient_facets();
        let extremal: Vec<&Vec<i64>> = self
            .generators
            .iter()
            .filter(|g| facet_values(&facets, g).iter().filter(|&&v| v == 0).count() + 1 == rank)
            .collect();
        if facets.len() != rank || extremal.len() != rank {
            return Err(AffineError::NotNormalAsserted);
        }
        let s = h.degree();
        let mut layers: Vec<FxHashSet<Vec<i64>>> = vec![FxHashSet::from_iter([vec![0; self.ambient_dim]])];
        let mut total = 1u64;
        for n in 1..=s + 1 {
            let next: FxHashSet<Vec<i64>> = layers[n - 1]
                .iter()
                .flat_map(|p| self.generators.iter().map(move |g| add(p, g)))
                .collect();
            total += next.len() as u64;
            if total > ceiling {
                return Err(AffineError::ResourceBound(ceiling));
            }
            layers.push(next);
        }
        let apery: Vec<FxHashSet<Vec<i64>>> = layers
            .iter()
            .enumerate()
            .map(|(n, layer)| {
                layer
                    .iter()
                    .filter(|p| n == 0 || extremal.iter().all(|e| !layers[n - 1].contains(&sub(p, e))))
                    .cloned()
                    .collect()
            })
            .collect();
        for (degree, ap) in apery.iter().enumerate() {
            let hn = h.coeffs().get(degree).copied().unwrap_or(0);
            if ap.len() as i64 != hn {
                return Err(AffineError::NotCohenMacaulay {
                    degree,
                    apery: ap.len(),
                    h: hn,
                });
            }
        }
        let dim = self.krull_dim();
        let mut degrees = Vec::new();
        for n in 0..=s {
            let maximal = apery[n]
                .iter()
                .filter(|p| self.generators.iter().all(|g| !apery[n + 1].contains(&add(p, g))))
                .count();
            degrees.extend(std::iter::repeat_n(dim as i64 - n as i64, maximal));
        }
        Ok(CanonicalType::from_degrees(degrees))
    }
}

/// Facet data for the minimal-generator test of the interior ideal.
struct OmegaScan {
    facets: Vec<Vec<i64>>,
    generator_values: Vec<Vec<i64>>,
    degrees: Vec<i64>,
}

impl OmegaScan {
    fn new(s: &AffineSemigroup) -> Result<Self, AffineError> {
        let cone = Cone::<i64>::from_generators(&s.generators)?;
        let facets = cone.ambient_facets();
        let generator_values = s.generators.iter().map(|g| facet_values(&facets, g)).collect();
        Ok(Self {
            facets,
            generator_values,
            degrees: Vec::new(),
        })
    }

    fn is_minimal_interior(&self, p: &[i64]) -> bool {
        let v = facet_values(&self.facets, p);
        v.iter().all(|&x| x > 0)
            && self
                .generator_values
                .iter()
                .all(|g| v.iter().zip(g).any(|(pv, gv)| pv <= gv))
    }

    fn visit(&mut self, degree: u32, layer: LayerView<'_>) {
        let found = layer.count_matching(|p| self.is_minimal_interior(p));
        self.degrees.extend(std::iter::repeat_n(degree as i64, found));
    }
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn facet_values(facets: &[Vec<i64>], p: &[i64]) -> Vec<i64> {
    facets.iter().map(|f| f.iter().zip(p).map(|(a, b)| a * b).sum()).collect()
}

struct Layers<K> {
    gens: Vec<K>,
    layer: Vec<K>,
    degree: usize,
    total: u64,
    ceiling: u64,
}

impl<K: Clone + Hash + Eq + Send + Sync> Layers<K> {
    fn start(gens: Vec<K>, origin: K, ceiling: u64) -> Self {
        Self {
            gens,
            layer: vec![origin],
            degree: 0,
            total: 1,
            ceiling,
        }
    }

    fn advance(&mut self, add: impl Fn(&K, &K) -> K + Sync) -> Result<(), AffineError> {
        let gens = &self.gens;
        let add = &add;
        let next: FxHashSet<K> = if self.layer.len() >= PARALLEL_THRESHOLD {
            self.layer
                .par_chunks(PARALLEL_THRESHOLD / 4)
                .map(|chunk| {
                    let mut set = FxHashSet::default();
                    for p in chunk {
                        set.extend(gens.iter().map(|g| add(p, g)));
                    }
                    set
                })
                .reduce(FxHashSet::default, |a, b| if a.len() < b.len() { merge(b, a) } else { merge(a, b) })
        } else {
            self.layer
                .iter()
                .flat_map(|p| gens.iter().map(move |g| add(p, g)))
                .collect()
        };
        self.total += next.len() as u64;
        if self.total > self.ceiling {
            return Err(AffineError::ResourceBound(self.ceiling));
        }
        self.layer = next.into_iter().collect();
        self.degree += 1;
        Ok(())
    }
}

fn merge<K: Hash + Eq>(mut a: FxHashSet<K>, b: FxHashSet<K>) -> FxHashSet<K> {
    a.extend(b);
    a
}

const PARALLEL_THRESHOLD: usize = 1 << 14;

/// Read-only access to the current layer in coordinates.
enum LayerView<'a> {
    Packed(&'a [u128], u32, usize),
    Wide(&'a [Box<[i64]>]),
}

impl LayerView<'_> {
    fn len(&self) -> usize {
        match self {
            Self::Packed(l, ..) => l.len(),
            Self::Wide(l) => l.len(),
        }
    }

    fn count_matching(&self, pred: impl Fn(&[i64]) -> bool + Sync) -> usize {
        match *self {
            Self::Packed(layer, bits, dim) => layer
                .par_iter()
                .filter(|&&k| pred(&unpack(k, bits, dim)))
                .count(),
            Self::Wide(layer) => layer.par_iter().filter(|p| pred(p)).count(),
        }
    }
}

fn pack(p: &[i64], bits: u32) -> u128 {
    p.iter()
        .enumerate()
        .fold(0u128, |acc, (i, &x)| acc | ((x as u128) << (i as u32 * bits)))
}

fn unpack(k: u128, bits: u32, dim: usize) -> Vec<i64> {
    let mask = (1u128 << bits) - 1;
    (0..dim).map(|i| ((k >> (i as u32 * bits)) & mask) as i64).collect()
}

/// Layer-by-layer enumeration. Coordinates are packed into a `u128` while
/// every coordinate of the current degree fits in `bits` bits.
struct Walk {
    dim: usize,
    repr: Repr,
}

enum Repr {
    Packed { layers: Layers<u128>, bits: u32, max_degree: usize },
    Wide(Layers<Box<[i64]>>),
}

impl Walk {
    fn new(s: &AffineSemigroup, ceiling: u64) -> Self {
        let dim = s.ambient_dim;
        let bits = (128 / dim as u32).min(63);
        let max_entry = s.generators.iter().flatten().copied().max().unwrap_or(1);
        let max_degree = usize::try_from(((1u128 << bits) - 1) / max_entry as u128).unwrap_or(usize::MAX);
        let repr = if max_degree >= 8 {
            Repr::Packed {
                layers: Layers::start(s.generators.iter().map(|g| pack(g, bits)).collect(), 0, ceiling),
                bits,
                max_degree,
            }
        } else {
            Repr::Wide(Layers::start(
                s.generators.iter().map(|g| g.clone().into_boxed_slice()).collect(),
                vec![0; dim].into_boxed_slice(),
                ceiling,
            ))
        };
        Self { dim, repr }
    }

    fn advance(&mut self) -> Result<LayerView<'_>, AffineError> {
        if let Repr::Packed { layers, bits, max_degree } = &self.repr {
            if layers.degree >= *max_degree {
                let (bits, dim) = (*bits, self.dim);
                let widen = |k: &u128| unpack(*k, bits, dim).into_boxed_slice();
                self.repr = Repr::Wide(Layers {
                    gens: layers.gens.iter().map(widen).collect(),
                    layer: layers.layer.iter().map(widen).collect(),
                    degree: layers.degree,
                    total: layers.total,
                    ceiling: layers.ceiling,
                });
            }
        }
        match &mut self.repr {
            Repr::Packed { layers, bits, .. } => {
                layers.advance(|a, b| a + b)?;
                Ok(LayerView::Packed(&layers.layer, *bits, self.dim))
            }
            Repr::Wide(layers) => {
                layers.advance(|a, b| a.iter().zip(b.iter()).map(|(x, y)| x + y).collect())?;
                Ok(LayerView::Wide(&layers.layer))
            }
        }
    }
}

/// In a normal ring the interior ideal starts in degree `-a` with `h_s`
/// generators there.
fn check_interior(h: &HPolynomial, dim: u32, ct: CanonicalType) -> Result<CanonicalType, AffineError> {
    let least = i64::from(dim) - h.degree() as i64;
    let h_s = h.coeffs().last().copied().unwrap_or(0);
    let at_least = ct.omega_degrees.iter().filter(|&&d| d == least).count() as i64;
    match ct.omega_degrees.first() {
        Some(&d) if d == least && at_least == h_s => Ok(ct),
        Some(&d) => Err(AffineError::NormalityRefuted(format!(
            "interior ideal starts in degree {d} with {at_least} generators in degree {least}, expected {h_s}"
        ))),
        None => Err(AffineError::NormalityRefuted("no interior points found".into())),
    }
}
