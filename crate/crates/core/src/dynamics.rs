//! Eigenvalue-level dynamics: the Dyson Langevin equation, the hermitian
//! eigenvector SDE and the N=2 non-normal trajectory experiment.

use rand::Rng;

use crate::diffusion::{step_ginibre_scaled, DiffusionState};
use crate::eigen::{eigen_decompose, overlaps, EigenSystem};
use crate::error::{contract, Error, Result};
use crate::rng::gaussian;
use crate::types::{GinibreMatrix, OUParams, SquareComplexMatrix, C64};

/// Pairs closer than this after a step are treated as a collision.
pub const COLLISION_GAP: f64 = 1e-8;
/// Consecutive rejections tolerated before giving up.
pub const MAX_HALVINGS: u32 = 20;

/// Spacing used to split degenerate initial eigenvalues.
pub const DEFAULT_JITTER: f64 = 1e-6;

/// Sorts and spreads repeated values so that neighbours are at least
/// `spacing` apart. Groups are widened symmetrically around their value.
pub fn jitter_degenerate(values: &[f64], spacing: f64) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mut out = Vec::with_capacity(v.len());
    let mut i = 0;
    while i < v.len() {
        let mut j = i + 1;
        while j < v.len() && v[j] - v[i] < spacing {
            j += 1;
        }
        let m = j - i;
        let centre = v[i..j].iter().sum::<f64>() / m as f64;
        for k in 0..m {
            out.push(centre + (k as f64 - (m - 1) as f64 / 2.0) * spacing);
        }
        i = j;
    }
    out
}

fn min_gap(sorted: &[f64]) -> f64 {
    sorted.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
}

fn is_sorted_with_gap(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] - w[0] >= COLLISION_GAP) && v.iter().all(|x| x.is_finite())
}

fn dyson_euler<R: Rng + ?Sized>(lambdas: &[f64], a: f64, h: f64, rng: &mut R) -> Vec<f64> {
    let n = lambdas.len();
    let nf = n as f64;
    let sd = (h / nf).sqrt();
    (0..n)
        .map(|i| {
            let li = lambdas[i];
            let coulomb: f64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (li - lambdas[j])).sum();
            li + sd * gaussian(rng) + h * (coulomb / nf - a * li)
        })
        .collect()
}

// Smallest k with dt/2^k small enough that the relative noise of a
// neighbouring pair stays well below their gap.
fn substep_level(dt: f64, n: usize, gap: f64) -> u32 {
    if n < 2 {
        return 0;
    }
    let safe = n as f64 * gap * gap / 16.0;
    let mut k = 0;
    while dt / 2f64.powi(k as i32) > safe && k < 60 {
        k += 1;
    }
    k
}

/// Advances sorted, distinct eigenvalues by `params.dt`.
///
/// The step is split into sub-steps short enough for the current minimum
/// gap. A sub-step that reorders the eigenvalues or leaves a pair closer
/// than [`COLLISION_GAP`] is redrawn at half the size; after
/// [`MAX_HALVINGS`] consecutive rejections the step fails.
pub fn dyson_step<R: Rng + ?Sized>(lambdas: &[f64], params: &OUParams, rng: &mut R) -> Result<Vec<f64>> {
    params.validate()?;
    if lambdas.len() != params.n {
        return Err(contract("eigenvalue count differs from params.n"));
    }
    if !is_sorted_with_gap(lambdas) {
        return Err(Error::Collision { gap: min_gap(lambdas), halvings: 0 });
    }
    let mut cur = lambdas.to_vec();
    let mut remaining = params.dt;
    while remaining > 0.0 {
        let level = substep_level(params.dt, params.n, min_gap(&cur));
        let mut h = (params.dt / 2f64.powi(level as i32)).min(remaining);
        let mut rejections = 0;
        loop {
            let next = dyson_euler(&cur, params.a, h, rng);
            if is_sorted_with_gap(&next) {
                cur = next;
                break;
            }
            rejections += 1;
            if rejections > MAX_HALVINGS {
                return Err(Error::Collision { gap: min_gap(&cur), halvings: MAX_HALVINGS });
            }
            h *= 0.5;
        }
        remaining -= h;
        if remaining < params.dt * 1e-12 {
            remaining = 0.0;
        }
    }
    Ok(cur)
}

/// Integrates the Dyson equation for `steps` steps and returns the path,
/// starting with the (sorted) initial values.
pub fn dyson_trajectory<R: Rng + ?Sized>(
    initial: &[f64],
    params: &OUParams,
    steps: usize,
    rng: &mut R,
) -> Result<TrajectoryRecord> {
    let mut lam = initial.to_vec();
    lam.sort_by(f64::total_cmp);
    let mut times = Vec::with_capacity(steps + 1);
    let mut paths = Vec::with_capacity(steps + 1);
    times.push(0.0);
    paths.push(lam.iter().map(|&x| C64::new(x, 0.0)).collect());
    for s in 1..=steps {
        lam = dyson_step(&lam, params, rng)?;
        times.push(s as f64 * params.dt);
        paths.push(lam.iter().map(|&x| C64::new(x, 0.0)).collect());
    }
    TrajectoryRecord::new(times, paths, None, Vec::new())
}

/// Modified Gram-Schmidt on the columns of `m`.
pub fn orthonormalize_columns(m: &mut SquareComplexMatrix) {
    let n = m.n();
    for j in 0..n {
        for k in 0..j {
            let proj: C64 = (0..n).map(|i| m[(i, k)].conj() * m[(i, j)]).sum();
            for i in 0..n {
                let v = m[(i, k)];
                m[(i, j)] -= proj * v;
            }
        }
        let norm = (0..n).map(|i| m[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        for i in 0..n {
            m[(i, j)] /= norm;
        }
    }
}

/// `max |U†U - 1|` for the eigenvector frame.
pub fn frame_gram_error(u: &SquareComplexMatrix) -> f64 {
    u.adjoint().matmul(u).max_abs_diff(&SquareComplexMatrix::identity(u.n()))
}

fn eigenvector_euler<R: Rng + ?Sized>(
    lambdas: &[f64],
    frame: &SquareComplexMatrix,
    n_dim: usize,
    h: f64,
    rng: &mut R,
) -> SquareComplexMatrix {
    let n = lambdas.len();
    let nf = n_dim as f64;
    // hermitian noise dB_ij = conj(dB_ji), E|dB_ij|² = h
    let sd = (0.5 * h).sqrt();
    let mut db = SquareComplexMatrix::zeros(n);
    for i in 0..n {
        for j in i + 1..n {
            let b = C64::new(sd * gaussian(rng), sd * gaussian(rng));
            db[(i, j)] = b;
            db[(j, i)] = b.conj();
        }
    }
    let mut next = frame.clone();
    for i in 0..n {
        let mut shrink = 0.0;
        for j in 0..n {
            if j == i {
                continue;
            }
            let d = lambdas[i] - lambdas[j];
            shrink += h / (d * d);
            let coef = db[(i, j)] / (nf.sqrt() * d);
            for k in 0..n {
                next[(k, i)] += coef * frame[(k, j)];
            }
        }
        let s = shrink / (2.0 * nf);
        for k in 0..n {
            next[(k, i)] -= frame[(k, i)] * s;
        }
    }
    next
}

/// One step of the coupled eigenvalue/eigenvector evolution of a hermitian
/// system. Eigenvalues move by [`dyson_step`]; the frame moves by the
/// eigenvector SDE with its own draws. Both use sub-steps sized by the
/// current minimum gap. With `reorthonormalize` the frame is passed through
/// modified Gram-Schmidt after every sub-step.
pub fn hermitian_eigenvector_step<R: Rng + ?Sized>(
    system: &EigenSystem,
    params: &OUParams,
    reorthonormalize: bool,
    rng: &mut R,
) -> Result<EigenSystem> {
    params.validate()?;
    let n = system.n();
    if n != params.n {
        return Err(contract("system dimension differs from params.n"));
    }
    if system.values.iter().any(|z| z.im != 0.0) {
        return Err(contract("hermitian system expected (real eigenvalues)"));
    }
    let mut lam: Vec<f64> = system.real_values();
    if !is_sorted_with_gap(&lam) {
        return Err(Error::Collision { gap: min_gap(&lam), halvings: 0 });
    }
    let mut frame = system.right.clone();
    let mut remaining = params.dt;
    while remaining > 0.0 {
        let level = substep_level(params.dt, n, min_gap(&lam));
        let h = (params.dt / 2f64.powi(level as i32)).min(remaining);
        frame = eigenvector_euler(&lam, &frame, params.n, h, rng);
        if reorthonormalize {
            orthonormalize_columns(&mut frame);
        }
        let sub = OUParams { dt: h, ..*params };
        lam = dyson_step(&lam, &sub, rng)?;
        remaining -= h;
        if remaining < params.dt * 1e-12 {
            remaining = 0.0;
        }
    }
    let left = frame.adjoint();
    Ok(EigenSystem { values: lam.into_iter().map(|x| C64::new(x, 0.0)).collect(), right: frame, left })
}

/// Time series of eigenvalues (and optionally O_11) on a uniform grid.
#[derive(Clone, Debug)]
pub struct TrajectoryRecord {
    pub times: Vec<f64>,
    pub eigenvalue_paths: Vec<Vec<C64>>,
    pub overlap_path: Option<Vec<f64>>,
    /// `Δλ_i/√Δt` for each step; one shorter than `times`.
    pub jumps: Vec<Vec<C64>>,
    /// Steps at which eigenvalue tracking was ambiguous.
    pub ambiguous_steps: Vec<usize>,
}

impl TrajectoryRecord {
    pub fn new(
        times: Vec<f64>,
        eigenvalue_paths: Vec<Vec<C64>>,
        overlap_path: Option<Vec<f64>>,
        ambiguous_steps: Vec<usize>,
    ) -> Result<Self> {
        if times.len() != eigenvalue_paths.len() {
            return Err(contract("times and eigenvalue paths differ in length"));
        }
        if let Some(o) = &overlap_path {
            if o.len() != times.len() {
                return Err(contract("overlap path length differs from times"));
            }
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(contract("times must be strictly increasing"));
        }
        let mut rec = Self { times, eigenvalue_paths, overlap_path, jumps: Vec::new(), ambiguous_steps };
        rec.jumps = if rec.times.len() >= 2 { jump_statistics(&rec)? } else { Vec::new() };
        Ok(rec)
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// `|λ_1 - λ_2|` per time (N ≥ 2).
    pub fn distance_path(&self) -> Vec<f64> {
        self.eigenvalue_paths.iter().map(|l| (l[0] - l[1]).norm()).collect()
    }
}

/// Normalized increments `Δλ_i/√Δt`. The time grid must be uniform.
pub fn jump_statistics(record: &TrajectoryRecord) -> Result<Vec<Vec<C64>>> {
    let t = &record.times;
    if t.len() < 2 {
        return Err(contract("need at least two times"));
    }
    let dt = t[1] - t[0];
    for w in t.windows(2) {
        if ((w[1] - w[0]) - dt).abs() > 1e-9 * dt.max(w[1].abs()) {
            return Err(contract("time grid is not uniform"));
        }
    }
    let s = dt.sqrt();
    Ok(record
        .eigenvalue_paths
        .windows(2)
        .map(|w| w[1].iter().zip(&w[0]).map(|(b, a)| (b - a) / s).collect())
        .collect())
}

/// Greedy nearest-neighbour matching of `current` onto `previous`, in index
/// order of `previous`. Returns the reordered values and whether any match
/// was ambiguous (second-best candidate within twice the best distance).
pub fn track_eigenvalues(previous: &[C64], current: &[C64]) -> (Vec<C64>, bool) {
    let n = previous.len();
    let mut used = vec![false; n];
    let mut out = Vec::with_capacity(n);
    let mut ambiguous = false;
    for p in previous {
        let mut best = (usize::MAX, f64::INFINITY);
        let mut second = f64::INFINITY;
        for (j, c) in current.iter().enumerate() {
            if used[j] {
                continue;
            }
            let d = (c - p).norm();
            if d < best.1 {
                second = best.1;
                best = (j, d);
            } else if d < second {
                second = d;
            }
        }
        if second < 2.0 * best.1 {
            ambiguous = true;
        }
        used[best.0] = true;
        out.push(current[best.0]);
    }
    (out, ambiguous)
}

/// Settings for the N=2 non-normal experiment.
#[derive(Clone, Copy, Debug)]
pub struct TwoByTwoConfig {
    pub params: OUParams,
    pub initial: [f64; 2],
    pub duration: f64,
    /// Multiplies the noise amplitude; `0` gives the deterministic flow.
    pub noise_scale: f64,
}

impl TwoByTwoConfig {
    pub fn paper_default(seed: u64) -> Self {
        Self {
            params: OUParams { a: 0.0, n: 2, dt: 1e-4, seed },
            initial: [0.3, -0.3],
            duration: 0.2,
            noise_scale: 1.0,
        }
    }

    pub fn steps(&self) -> usize {
        (self.duration / self.params.dt).round() as usize
    }
}

/// Evolves `diag(initial)` with the Ginibre OU stepper, recording the
/// tracked eigenvalues, O_11 and normalized jumps at every step.
pub fn run_two_by_two_experiment<R: Rng + ?Sized>(config: &TwoByTwoConfig, rng: &mut R) -> Result<TrajectoryRecord> {
    let p = config.params;
    if p.n != 2 {
        return Err(contract("two-by-two experiment needs n = 2"));
    }
    let x0 = GinibreMatrix::new(SquareComplexMatrix::from_real_diagonal(&config.initial))?;
    let mut state = DiffusionState::new(x0, p);
    let steps = config.steps();
    let mut times = Vec::with_capacity(steps + 1);
    let mut paths: Vec<Vec<C64>> = Vec::with_capacity(steps + 1);
    let mut o11 = Vec::with_capacity(steps + 1);
    let mut ambiguous = Vec::new();

    times.push(0.0);
    paths.push(config.initial.iter().map(|&x| C64::new(x, 0.0)).collect());
    o11.push(1.0);
    for s in 1..=steps {
        state = step_ginibre_scaled(&state, config.noise_scale, rng)?;
        let sys = eigen_decompose(state.matrix.matrix())?;
        let (tracked, amb) = track_eigenvalues(&paths[s - 1], &sys.values);
        if amb {
            ambiguous.push(s);
        }
        // O_11 = O_22 for N = 2, so the label does not matter here
        let o = overlaps(&sys).diagonal()[0];
        times.push(s as f64 * p.dt);
        paths.push(tracked);
        o11.push(o);
    }
    TrajectoryRecord::new(times, paths, Some(o11), ambiguous)
}

/// Outcome of the max-O_11 / min-distance coincidence test over runs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoincidenceSummary {
    pub qualifying: usize,
    pub coincident: usize,
}

impl CoincidenceSummary {
    pub fn fraction(&self) -> f64 {
        self.coincident as f64 / self.qualifying as f64
    }
}

/// Among runs whose minimum eigenvalue distance is below `max_min_distance`
/// and whose O_11 departs from 1, counts those where the time of max O_11
/// is within `window_steps` steps of the time of minimum distance. Returns
/// `None` when no run qualifies (e.g. hermitian runs with O ≡ 1).
pub fn coincidence_statistic(
    records: &[TrajectoryRecord],
    max_min_distance: f64,
    window_steps: usize,
) -> Option<CoincidenceSummary> {
    let mut qualifying = 0;
    let mut coincident = 0;
    for r in records {
        let Some(o) = &r.overlap_path else { continue };
        let d = r.distance_path();
        let (imin, dmin) = argmin(&d);
        let (imax, omax) = argmax(o);
        if dmin >= max_min_distance || omax <= 1.0 + 1e-9 {
            continue;
        }
        qualifying += 1;
        if imin.abs_diff(imax) <= window_steps {
            coincident += 1;
        }
    }
    (qualifying > 0).then_some(CoincidenceSummary { qualifying, coincident })
}

fn argmin(xs: &[f64]) -> (usize, f64) {
    xs.iter().copied().enumerate().fold((0, f64::INFINITY), |b, c| if c.1 < b.1 { c } else { b })
}

fn argmax(xs: &[f64]) -> (usize, f64) {
    xs.iter().copied().enumerate().fold((0, f64::NEG_INFINITY), |b, c| if c.1 > b.1 { c } else { b })
}

/// Pairs `(|jump_i|, 1/d_i)` for every eigenvalue and step, where `d_i` is
/// the distance to the nearest neighbour at the start of the step.
pub fn jump_distance_pairs(record: &TrajectoryRecord) -> (Vec<f64>, Vec<f64>) {
    let mut jumps = Vec::new();
    let mut inv_dist = Vec::new();
    for (step, js) in record.jumps.iter().enumerate() {
        let lam = &record.eigenvalue_paths[step];
        for (i, j) in js.iter().enumerate() {
            let d = lam
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, l)| (l - lam[i]).norm())
                .fold(f64::INFINITY, f64::min);
            jumps.push(j.norm());
            inv_dist.push(1.0 / d);
        }
    }
    (jumps, inv_dist)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_stream;

    fn params(a: f64, n: usize, dt: f64) -> OUParams {
        OUParams::new(a, n, dt, 0).unwrap()
    }

    #[test]
    fn single_particle_step_moments() {
        let p = params(0.5, 1, 1e-3);
        let mut rng = rng_stream(1, 0);
        let m = 200_000;
        let xs: Vec<f64> = (0..m).map(|_| dyson_step(&[2.0], &p, &mut rng).unwrap()[0] - 2.0).collect();
        let mean = xs.iter().sum::<f64>() / m as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / m as f64;
        assert!((mean + 1e-3).abs() < 5.0 * (1e-3 / m as f64).sqrt());
        assert!((var / 1e-3 - 1.0).abs() < 0.02);
    }

    #[test]
    fn two_particle_drift() {
        let p = params(0.0, 2, 1e-4);
        let mut rng = rng_stream(2, 0);
        let m = 100_000;
        let mut s = [0.0; 2];
        for _ in 0..m {
            let out = dyson_step(&[-1.0, 1.0], &p, &mut rng).unwrap();
            s[0] += out[0] + 1.0;
            s[1] += out[1] - 1.0;
        }
        let se = (1e-4 / 2.0 / m as f64).sqrt();
        assert!((s[1] / m as f64 - 1e-4 / 4.0).abs() < 5.0 * se);
        assert!((s[0] / m as f64 + 1e-4 / 4.0).abs() < 5.0 * se);
    }

    #[test]
    fn jittered_cluster_survives_first_step() {
        let init: Vec<f64> = [vec![-1.0; 10], vec![1.0; 10]].concat();
        let lam = jitter_degenerate(&init, DEFAULT_JITTER);
        assert!(min_gap(&lam) >= DEFAULT_JITTER * (1.0 - 1e-9));
        let p = params(0.5, 20, 2e-4);
        let mut rng = rng_stream(3, 0);
        let out = dyson_step(&lam, &p, &mut rng).unwrap();
        assert!(is_sorted_with_gap(&out));
        assert!(min_gap(&out) > min_gap(&lam));
    }

    #[test]
    fn collision_input_is_rejected() {
        let p = params(0.0, 2, 1e-4);
        let r = dyson_step(&[0.0, 0.0], &p, &mut rng_stream(0, 0));
        assert!(matches!(r, Err(Error::Collision { .. })));
    }

    #[test]
    fn eigenvector_frame_stays_orthonormal() {
        let p = params(0.5, 4, 1e-3);
        let values: Vec<C64> = [-1.5, -0.5, 0.5, 1.5].iter().map(|&x| C64::new(x, 0.0)).collect();
        let id = SquareComplexMatrix::identity(4);
        let start = EigenSystem { values, right: id.clone(), left: id };
        let mut rng = rng_stream(9, 0);
        let mut with = start.clone();
        let mut without = start;
        for _ in 0..1000 {
            with = hermitian_eigenvector_step(&with, &p, true, &mut rng).unwrap();
            without = hermitian_eigenvector_step(&without, &p, false, &mut rng).unwrap();
        }
        assert!(frame_gram_error(&with.right) < 1e-6);
        assert!(frame_gram_error(&without.right) > frame_gram_error(&with.right));
    }

    #[test]
    fn single_eigenvector_is_constant() {
        let p = params(0.5, 1, 1e-3);
        let s = EigenSystem {
            values: vec![C64::new(0.3, 0.0)],
            right: SquareComplexMatrix::identity(1),
            left: SquareComplexMatrix::identity(1),
        };
        let out = hermitian_eigenvector_step(&s, &p, false, &mut rng_stream(1, 1)).unwrap();
        assert_eq!(out.right[(0, 0)], C64::new(1.0, 0.0));
    }

    #[test]
    fn two_level_self_component_shrinks_at_drift_rate() {
        // averaged over noise, <ψ_1|ψ_1(dt)> = 1 - dt/(2N g²)
        let p = params(0.0, 2, 1e-4);
        let g: f64 = 1.0;
        let s = EigenSystem {
            values: vec![C64::new(-0.5, 0.0), C64::new(0.5, 0.0)],
            right: SquareComplexMatrix::identity(2),
            left: SquareComplexMatrix::identity(2),
        };
        let mut rng = rng_stream(5, 0);
        let m = 20_000;
        let mut acc = 0.0;
        for _ in 0..m {
            let out = hermitian_eigenvector_step(&s, &p, false, &mut rng).unwrap();
            acc += out.right[(0, 0)].re;
        }
        let expected = 1.0 - 1e-4 / (2.0 * 2.0 * g * g);
        assert!((acc / m as f64 - expected).abs() < 1e-9);
    }

    #[test]
    fn constant_path_has_zero_jumps() {
        let times: Vec<f64> = (0..5).map(|i| i as f64 * 0.1).collect();
        let paths = vec![vec![C64::new(1.0, 0.0)]; 5];
        let r = TrajectoryRecord::new(times, paths, None, vec![]).unwrap();
        assert!(r.jumps.iter().flatten().all(|j| *j == C64::new(0.0, 0.0)));
    }

    #[test]
    fn brownian_jump_variance() {
        let dt: f64 = 1e-3;
        let sigma2 = 2.5;
        let mut rng = rng_stream(8, 0);
        let mut x = 0.0;
        let mut times = vec![0.0];
        let mut paths = vec![vec![C64::new(0.0, 0.0)]];
        for i in 1..=10_000 {
            x += (sigma2 * dt).sqrt() * gaussian(&mut rng);
            times.push(i as f64 * dt);
            paths.push(vec![C64::new(x, 0.0)]);
        }
        let r = TrajectoryRecord::new(times, paths, None, vec![]).unwrap();
        let v = r.jumps.iter().map(|j| j[0].re.powi(2)).sum::<f64>() / 10_000.0;
        assert!((v / sigma2 - 1.0).abs() < 0.1);
    }

    #[test]
    fn non_uniform_grid_is_rejected() {
        let r = TrajectoryRecord::new(
            vec![0.0, 0.1, 0.3],
            vec![vec![C64::new(0.0, 0.0)]; 3],
            None,
            vec![],
        );
        assert!(matches!(r, Err(Error::Contract(_))));
    }

    #[test]
    fn two_by_two_starts_normal_and_zero_noise_is_static() {
        let mut cfg = TwoByTwoConfig::paper_default(1);
        cfg.duration = 0.01;
        let r = run_two_by_two_experiment(&cfg, &mut rng_stream(1, 0)).unwrap();
        assert_eq!(r.overlap_path.as_ref().unwrap()[0], 1.0);
        assert_eq!(r.len(), 101);

        cfg.noise_scale = 0.0;
        let r = run_two_by_two_experiment(&cfg, &mut rng_stream(1, 0)).unwrap();
        for (l, o) in r.eigenvalue_paths.iter().zip(r.overlap_path.as_ref().unwrap()) {
            assert!((l[0] - C64::new(0.3, 0.0)).norm() < 1e-15);
            assert!((l[1] - C64::new(-0.3, 0.0)).norm() < 1e-15);
            assert!((o - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn tracking_follows_nearest_neighbour() {
        let prev = [C64::new(1.0, 0.0), C64::new(-1.0, 0.0)];
        let cur = [C64::new(-0.9, 0.0), C64::new(1.1, 0.0)];
        let (t, amb) = track_eigenvalues(&prev, &cur);
        assert_eq!(t, vec![cur[1], cur[0]]);
        assert!(!amb);
    }
}
