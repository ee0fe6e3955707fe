//! Lloyd-style k-means over sparse vectors.
//!
//! Points are sparse `(index, value)` lists; centroids are dense. The loop
//! alternates nearest-centroid assignment (squared Euclidean distance, ties
//! to the lowest cluster index) with mean recomputation, repairs empty
//! clusters by seizing the point farthest from its own centroid, and stops
//! when assignments no longer change, when no centroid moved more than the
//! tolerance, or at the iteration cap. The minimized objective is the
//! within-cluster sum of squared distances; it is recorded after every
//! iteration so descent can be audited.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Error;
use crate::Result;

/// Sparse point: strictly index-sorted `(dimension, value)` pairs.
pub type SparsePoint = Vec<(usize, f64)>;

/// Encode a dense slice as a sparse point, dropping exact zeros.
pub fn dense_point(values: &[f64]) -> SparsePoint {
    values
        .iter()
        .enumerate()
        .filter(|(_, v)| **v != 0.0)
        .map(|(i, v)| (i, *v))
        .collect()
}

/// Smallest dimensionality that fits every point.
pub fn dimension(points: &[SparsePoint]) -> usize {
    points
        .iter()
        .flat_map(|p| p.iter().map(|(i, _)| i + 1))
        .max()
        .unwrap_or(0)
}

/// Centroid initialization strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InitMethod {
    /// k distinct point indices drawn from the seeded generator.
    #[default]
    RandomIndices,
    /// One seeded index, then repeatedly the point farthest from the
    /// centroids chosen so far.
    FarthestFirst,
}

#[derive(Debug, Clone)]
pub struct KMeansConfig {
    pub k: usize,
    pub max_iterations: usize,
    pub tolerance: f64,
    pub seed: u64,
    pub init: InitMethod,
}

impl KMeansConfig {
    pub fn new(k: usize, seed: u64) -> KMeansConfig {
        KMeansConfig {
            k,
            max_iterations: 100,
            tolerance: 1e-9,
            seed,
            init: InitMethod::RandomIndices,
        }
    }

    fn validate(&self, num_points: usize) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidConfig("k must be at least 1".into()));
        }
        if num_points < self.k {
            return Err(Error::TooFewPoints {
                k: self.k,
                points: num_points,
            });
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig("max_iterations must be at least 1".into()));
        }
        if self.tolerance.is_nan() || self.tolerance < 0.0 {
            return Err(Error::InvalidConfig("tolerance must be non-negative".into()));
        }
        Ok(())
    }
}

/// Result of a clustering run.
#[derive(Debug, Clone, PartialEq)]
pub struct KMeansModel {
    pub centroids: Vec<Vec<f64>>,
    pub assignments: Vec<usize>,
    /// Final within-cluster sum of squared distances.
    pub objective: f64,
    /// Objective after each completed (assign, update) iteration.
    pub objective_trace: Vec<f64>,
    pub iterations_run: usize,
    pub converged: bool,
}

impl KMeansModel {
    pub fn cluster_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.centroids.len()];
        for &a in &self.assignments {
            sizes[a] += 1;
        }
        sizes
    }

    pub fn summary(&self) -> ClusterSummary {
        ClusterSummary {
            k: self.centroids.len(),
            iterations_run: self.iterations_run,
            converged: self.converged,
            objective: self.objective,
            objective_trace: self.objective_trace.clone(),
            centroid_norms: self
                .centroids
                .iter()
                .map(|c| c.iter().map(|v| v * v).sum::<f64>().sqrt())
                .collect(),
            cluster_sizes: self.cluster_sizes(),
        }
    }
}

/// Serializable run summary for reports.
#[derive(Debug, Clone, Serialize)]
pub struct ClusterSummary {
    pub k: usize,
    pub iterations_run: usize,
    pub converged: bool,
    pub objective: f64,
    pub objective_trace: Vec<f64>,
    pub centroid_norms: Vec<f64>,
    pub cluster_sizes: Vec<usize>,
}

/// Squared Euclidean distance between a sparse point and a dense centroid.
/// Missing sparse entries count as zero.
fn sq_dist(point: &SparsePoint, centroid: &[f64]) -> f64 {
    let mut total = 0.0;
    let mut entries = point.iter().peekable();
    for (dim, &c) in centroid.iter().enumerate() {
        let x = match entries.peek() {
            Some(&&(d, v)) if d == dim => {
                entries.next();
                v
            }
            _ => 0.0,
        };
        let diff = x - c;
        total += diff * diff;
    }
    total
}

/// The squared-error objective: sum over points of the squared distance to
/// their assigned centroid. Summation is in point order so repeated
/// evaluations are bit-identical.
pub fn objective(points: &[SparsePoint], assignments: &[usize], centroids: &[Vec<f64>]) -> Result<f64> {
    if assignments.len() != points.len() {
        return Err(Error::IndexOutOfRange(format!(
            "{} assignments for {} points",
            assignments.len(),
            points.len()
        )));
    }
    let mut total = 0.0;
    for (point, &cluster) in points.iter().zip(assignments) {
        let centroid = centroids
            .get(cluster)
            .ok_or_else(|| Error::IndexOutOfRange(format!("cluster index {cluster} of {}", centroids.len())))?;
        total += sq_dist(point, centroid);
    }
    Ok(total)
}

fn to_dense(point: &SparsePoint, dim: usize) -> Vec<f64> {
    let mut dense = vec![0.0; dim];
    for &(i, v) in point {
        dense[i] = v;
    }
    dense
}

fn initial_centroids(points: &[SparsePoint], dim: usize, config: &KMeansConfig) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let indices = match config.init {
        InitMethod::RandomIndices => {
            // Partial Fisher-Yates: k distinct indices.
            let mut order: Vec<usize> = (0..points.len()).collect();
            for i in 0..config.k {
                let j = rng.random_range(i..order.len());
                order.swap(i, j);
            }
            order.truncate(config.k);
            order
        }
        InitMethod::FarthestFirst => {
            let mut chosen = vec![rng.random_range(0..points.len())];
            while chosen.len() < config.k {
                let mut best = None;
                let mut best_dist = f64::NEG_INFINITY;
                for (i, point) in points.iter().enumerate() {
                    if chosen.contains(&i) {
                        continue;
                    }
                    let nearest = chosen
                        .iter()
                        .map(|&c| sq_dist(point, &to_dense(&points[c], dim)))
                        .fold(f64::INFINITY, f64::min);
                    if nearest > best_dist {
                        best_dist = nearest;
                        best = Some(i);
                    }
                }
                chosen.push(best.expect("k <= number of points"));
            }
            chosen
        }
    };
    indices.into_iter().map(|i| to_dense(&points[i], dim)).collect()
}

fn assign(points: &[SparsePoint], centroids: &[Vec<f64>]) -> Vec<usize> {
    points
        .iter()
        .map(|point| {
            let mut best = 0;
            let mut best_dist = sq_dist(point, &centroids[0]);
            for (j, centroid) in centroids.iter().enumerate().skip(1) {
                let d = sq_dist(point, centroid);
                if d < best_dist {
                    best_dist = d;
                    best = j;
                }
            }
            best
        })
        .collect()
}

/// Give every empty cluster the point currently farthest from its own
/// centroid, never draining a cluster below one member.
fn repair_empty_clusters(points: &[SparsePoint], centroids: &[Vec<f64>], assignments: &mut [usize], k: usize) {
    let mut sizes = vec![0usize; k];
    for &a in assignments.iter() {
        sizes[a] += 1;
    }
    for empty in 0..k {
        if sizes[empty] > 0 {
            continue;
        }
        let mut farthest = None;
        let mut farthest_dist = f64::NEG_INFINITY;
        for (i, point) in points.iter().enumerate() {
            if sizes[assignments[i]] < 2 {
                continue;
            }
            let d = sq_dist(point, &centroids[assignments[i]]);
            if d > farthest_dist {
                farthest_dist = d;
                farthest = Some(i);
            }
        }
        let victim = farthest.expect("k <= points guarantees a donor cluster");
        sizes[assignments[victim]] -= 1;
        assignments[victim] = empty;
        sizes[empty] = 1;
    }
}

fn recompute_means(points: &[SparsePoint], assignments: &[usize], k: usize, dim: usize) -> Vec<Vec<f64>> {
    let mut sums = vec![vec![0.0; dim]; k];
    let mut counts = vec![0usize; k];
    for (point, &cluster) in points.iter().zip(assignments) {
        counts[cluster] += 1;
        for &(i, v) in point {
            sums[cluster][i] += v;
        }
    }
    for (sum, &count) in sums.iter_mut().zip(&counts) {
        if count > 0 {
            for v in sum.iter_mut() {
                *v /= count as f64;
            }
        }
    }
    sums
}

fn max_displacement(old: &[Vec<f64>], new: &[Vec<f64>]) -> f64 {
    old.iter()
        .zip(new)
        .map(|(a, b)| {
            a.iter()
                .zip(b)
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt()
        })
        .fold(0.0, f64::max)
}

/// Cluster `points` (all living in `dim` dimensions) into `config.k`
/// clusters. Fixed inputs and seed produce an identical model.
pub fn cluster(points: &[SparsePoint], dim: usize, config: &KMeansConfig) -> Result<KMeansModel> {
    config.validate(points.len())?;
    for point in points {
        if let Some(&(i, _)) = point.iter().find(|(i, _)| *i >= dim) {
            return Err(Error::IndexOutOfRange(format!("point index {i} of dimension {dim}")));
        }
    }

    let mut centroids = initial_centroids(points, dim, config);
    let mut previous_assignments: Option<Vec<usize>> = None;
    let mut trace = Vec::new();
    let mut converged = false;
    let mut iterations_run = 0;
    let mut assignments = Vec::new();

    for _ in 0..config.max_iterations {
        iterations_run += 1;
        assignments = assign(points, &centroids);
        repair_empty_clusters(points, &centroids, &mut assignments, config.k);
        let updated = recompute_means(points, &assignments, config.k, dim);
        let displacement = max_displacement(&centroids, &updated);
        centroids = updated;
        trace.push(objective(points, &assignments, &centroids)?);

        let unchanged = previous_assignments.as_deref() == Some(assignments.as_slice());
        previous_assignments = Some(assignments.clone());
        if unchanged || displacement <= config.tolerance {
            converged = true;
            break;
        }
    }

    let objective = *trace.last().expect("at least one iteration");
    Ok(KMeansModel {
        centroids,
        assignments,
        objective,
        objective_trace: trace,
        iterations_run,
        converged,
    })
}

/// Write `point_id,cluster_id` rows for a clustering run.
pub fn write_assignments_csv<W: std::io::Write>(out: &mut W, ids: &[String], model: &KMeansModel) -> std::io::Result<()> {
    writeln!(out, "point_id,cluster_id")?;
    for (id, cluster) in ids.iter().zip(&model.assignments) {
        writeln!(out, "{id},{cluster}")?;
    }
    Ok(())
}
