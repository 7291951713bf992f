//! Facets of a rational polyhedral cone by the double description method.
//!
//! The cone is given by generators. It is projected onto pivot coordinates of
//! its linear span so that it becomes full-dimensional; the facet normals are
//! then the extreme rays of the dual cone `{y : <g, y> >= 0 for all g}`,
//! found by adding the generator constraints one at a time with the
//! combinatorial adjacency test.

use crate::linalg;
use crate::scalar::{self, ExactInt, Overflow};

#[derive(Clone, Debug, PartialEq, Eq)]
struct ZeroSet(Vec<u64>);

impl ZeroSet {
    fn new(bits: usize) -> Self {
        Self(vec![0; bits.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn intersection(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn len(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    fn is_subset(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

struct Ray<T> {
    v: Vec<T>,
    zeros: ZeroSet,
}

/// A pointed cone together with its facet description.
#[derive(Clone, Debug)]
pub struct Cone<T: ExactInt> {
    ambient_dim: usize,
    pivots: Vec<usize>,
    facets: Vec<Vec<T>>,
}

impl<T: ExactInt> Cone<T> {
    /// Computes the facets of the cone spanned by `generators`, all of which
    /// must have the same length and at least one of which must be nonzero.
    pub fn from_generators(generators: &[Vec<T>]) -> Result<Self, Overflow> {
        let ambient_dim = generators.first().map_or(0, Vec::len);
        let pivots = linalg::pivot_columns(generators)?;
        let constraints: Vec<Vec<T>> = generators
            .iter()
            .map(|g| pivots.iter().map(|&c| g[c].clone()).collect())
            .collect();
        let facets = dual_extreme_rays(&constraints, pivots.len())?;
        Ok(Self {
            ambient_dim,
            pivots,
            facets,
        })
    }

    /// Dimension of the cone.
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Coordinates the facet normals live on.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Primitive inner facet normals in pivot coordinates.
    pub fn facets(&self) -> &[Vec<T>] {
        &self.facets
    }

    /// Facet normals lifted to ambient coordinates (zero off the pivots).
    pub fn ambient_facets(&self) -> Vec<Vec<T>> {
        self.facets
            .iter()
            .map(|f| {
                let mut full = vec![T::zero(); self.ambient_dim];
                for (k, &c) in self.pivots.iter().enumerate() {
                    full[c] = f[k].clone();
                }
                full
            })
            .collect()
    }

    /// Facet values `<f, p>` of an ambient point.
    pub fn facet_values(&self, p: &[T]) -> Result<Vec<T>, Overflow> {
        let proj: Vec<T> = self.pivots.iter().map(|&c| p[c].clone()).collect();
        self.facets.iter().map(|f| scalar::dot(f, &proj)).collect()
    }

    /// Whether a point of the linear span lies in the closed cone.
    pub fn contains(&self, p: &[T]) -> Result<bool, Overflow> {
        Ok(self.facet_values(p)?.iter().all(|v| !v.is_negative()))
    }

    /// Whether a point of the linear span lies in the relative interior.
    pub fn is_interior(&self, p: &[T]) -> Result<bool, Overflow> {
        Ok(self.facet_values(p)?.iter().all(|v| v.is_positive()))
    }
}

/// Extreme rays of `{y in R^r : <a, y> >= 0 for every constraint a}`, where
/// the constraints span `R^r` (so the cone is pointed).
fn dual_extreme_rays<T: ExactInt>(constraints: &[Vec<T>], r: usize) -> Result<Vec<Vec<T>>, Overflow> {
    let m = constraints.len();
    if r == 0 {
        return Ok(Vec::new());
    }
    let basis = linalg::independent_rows(constraints)?;
    debug_assert_eq!(basis.len(), r);
    let square: Vec<Vec<T>> = basis.iter().map(|&i| constraints[i].clone()).collect();
    let mut rays: Vec<Ray<T>> = Vec::with_capacity(r);
    for v in linalg::positive_adjugate_columns(&square)? {
        let mut zeros = ZeroSet::new(m);
        for &i in &basis {
            if scalar::dot(&constraints[i], &v)?.is_zero() {
                zeros.insert(i);
            }
        }
        rays.push(Ray { v, zeros });
    }

    let rest: Vec<usize> = (0..m).filter(|i| !basis.contains(i)).collect();
    for k in rest {
        let a = &constraints[k];
        let values: Vec<T> = rays.iter().map(|ray| scalar::dot(a, &ray.v)).collect::<Result<_, _>>()?;
        if values.iter().all(|v| !v.is_negative()) {
            for (ray, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    ray.zeros.insert(k);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();

        let mut next: Vec<Ray<T>> = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].zeros.intersection(&rays[n].zeros);
                if (common.len() as usize) + 2 < r {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(q, ray)| q == p || q == n || !common.is_subset(&ray.zeros));
                if !adjacent {
                    continue;
                }
                let mut v = Vec::with_capacity(r);
                for (x, y) in rays[n].v.iter().zip(&rays[p].v) {
                    v.push(scalar::sub(&scalar::mul(&values[p], x)?, &scalar::mul(&values[n], y)?)?);
                }
                scalar::primitive(&mut v);
                let mut zeros = common;
                zeros.insert(k);
                next.push(Ray { v, zeros });
            }
        }
        for (i, mut ray) in rays.into_iter().enumerate() {
            if values[i].is_zero() {
                ray.zeros.insert(k);
                next.push(ray);
            } else if values[i].is_positive() {
                next.push(ray);
            }
        }
        rays = next;
    }
    let mut out: Vec<Vec<T>> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    Ok(out)
}
