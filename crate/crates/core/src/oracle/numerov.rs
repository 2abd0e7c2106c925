//! Shooting eigensolver for the reduced radial equation `chi'' = W(r; E) chi`,
//! where `psi = chi sqrt(m)`.
//!
//! The eigenvalue is bracketed by Sturm node counting of the outward solution
//! and then refined by matching the outward and inward solutions at the
//! classical orbit radius.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{AmbiguitySet, MassModel, PotentialModel, RadialProfile};
use crate::recursion::{Problem, QuantumNumbers, DEFAULT_ORDER};

const R_MIN_FRACTION: f64 = 1e-6;
const STEPS_PER_R0: f64 = 250.0;
const MAX_POINTS: usize = 400_000;
/// `int sqrt(W) dr` past the outer turning point before the grid may end.
const TAIL_ACTION: f64 = 14.0;
/// Upper limit on `r_max / r0`.
const MAX_RANGE: f64 = 150.0;
const RESCALE: f64 = 1e200;
const MAX_WIDENINGS: usize = 60;
const MAX_ITERATIONS: usize = 300;
const BRACKET_WINDOW: f64 = 0.3;

/// `W(r; E) = l(l+1)/r^2 + F(r) + 2 m(r) (V(r) - E) / hbar^2`.
pub fn effective_w(
    mass: &MassModel,
    pot: &PotentialModel,
    amb: &AmbiguitySet,
    qn: &QuantumNumbers,
    e: f64,
    r: f64,
) -> f64 {
    centrifugal(qn.l) / (r * r) + regular_w(mass, pot, amb, qn.hbar, e, r)
}

fn centrifugal(l: u32) -> f64 {
    let l = f64::from(l);
    l * (l + 1.0)
}

fn regular_w(mass: &MassModel, pot: &PotentialModel, amb: &AmbiguitySet, hbar: f64, e: f64, r: f64) -> f64 {
    amb.correction_term(mass, r) + 2.0 * mass.value(r) * (pot.value(r) - e) / (hbar * hbar)
}

/// Uniform grid `r_j = r_min + j h`, `j = 0..points`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub h: f64,
    pub points: usize,
}

impl RadialGrid {
    pub fn new(r_min: f64, r_max: f64, points: usize) -> Result<Self> {
        if !(r_min > 0.0) || !(r_max > r_min) || !r_max.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "grid needs 0 < r_min < r_max, got [{r_min}, {r_max}]"
            )));
        }
        if points < 16 {
            return Err(Error::InvalidParameter(format!(
                "grid needs at least 16 points, got {points}"
            )));
        }
        Ok(Self {
            r_min,
            r_max,
            h: (r_max - r_min) / (points - 1) as f64,
            points,
        })
    }

    pub fn r(&self, j: usize) -> f64 {
        self.r_min + j as f64 * self.h
    }

    /// Same interval with half the step.
    pub fn refined(&self) -> Self {
        Self {
            h: self.h / 2.0,
            points: 2 * self.points - 1,
            ..*self
        }
    }

    /// Grid for state `qn` around the orbit radius `r0`, sized from a trial
    /// energy: it reaches well past the outer turning point and into the
    /// classically forbidden tail.
    pub fn default_for(problem: &Problem, qn: &QuantumNumbers, r0: f64, e_guess: f64) -> Result<Self> {
        if !(r0 > 0.0) || !e_guess.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "bad grid seed r0 = {r0}, E = {e_guess}"
            )));
        }
        let w = |r: f64| effective_w(&problem.mass, &problem.potential, &problem.ambiguity, qn, e_guess, r);
        let r_min = R_MIN_FRACTION * r0;
        let r_cap = MAX_RANGE * r0;
        let h = r0 / (STEPS_PER_R0 * f64::from(qn.n_r + 1));

        let mut r_turn = r0;
        while w(r_turn) < 0.0 && r_turn < r_cap {
            r_turn *= 1.01;
        }
        let target = (3.0 * r_turn).max(20.0 * r0).min(r_cap);
        let mut r = r_turn;
        let mut action = 0.0;
        let mut prev = w(r).max(0.0).sqrt();
        while r < r_cap {
            let next_r = r * 1.01;
            let wr = w(next_r);
            let root = wr.max(0.0).sqrt();
            action += 0.5 * (prev + root) * (next_r - r);
            prev = root;
            r = next_r;
            if action >= TAIL_ACTION && (r >= target || wr * h * h / 12.0 > 0.25) {
                break;
            }
        }
        let r_max = r.min(r_cap);
        let points = (((r_max - r_min) / h).ceil() as usize + 1).min(MAX_POINTS);
        Self::new(r_min, r_max, points)
    }
}

/// Decaying-branch `chi'/chi` at `r` from `W(r)` and `W(r - h)`.
///
/// With `chi = sqrt(r) phi(ln r)`, `phi'' = (r^2 W + 1/4) phi`; WKB applied to
/// `phi` is exact for `W ~ c / r^2` tails and reduces to the usual form where
/// `W` tends to a constant.
fn langer_log_derivative(r: f64, h: f64, w: f64, w_before: f64) -> Option<f64> {
    let q = r * r * w + 0.25;
    let q_before = (r - h) * (r - h) * w_before + 0.25;
    if !(q > 0.25) || !(q_before > 0.0) {
        return None;
    }
    let dq_dz = (q - q_before) / h * r;
    Some((0.5 - q.sqrt() - dq_dz / (4.0 * q)) / r)
}

/// Reduced wavefunction `chi` on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedWave {
    pub chi: Vec<f64>,
    pub node_count: u32,
}

impl ReducedWave {
    pub fn new(chi: Vec<f64>) -> Self {
        let node_count = count_nodes(&chi);
        Self { chi, node_count }
    }

    /// `psi = chi sqrt(m)` on the same grid.
    pub fn psi(&self, mass: &MassModel, grid: &RadialGrid) -> Vec<f64> {
        self.chi
            .iter()
            .enumerate()
            .map(|(j, c)| c * mass.value(grid.r(j)).sqrt())
            .collect()
    }
}

/// Sign changes of a sampled function. An exact zero is one change when the
/// sign on either side differs, none when it is a touch.
pub fn count_nodes(values: &[f64]) -> u32 {
    let mut counter = NodeCounter::default();
    for v in values {
        counter.push(*v);
    }
    counter.nodes
}

#[derive(Default)]
struct NodeCounter {
    last_sign: f64,
    nodes: u32,
}

impl NodeCounter {
    #[inline]
    fn push(&mut self, v: f64) {
        if v != 0.0 {
            let s = v.signum();
            if self.last_sign != 0.0 && s != self.last_sign {
                self.nodes += 1;
            }
            self.last_sign = s;
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumerovResult {
    pub energy: f64,
    pub wave: ReducedWave,
    pub grid: RadialGrid,
    /// Outward plus inward integrations spent on the search.
    pub iterations: usize,
}

impl NumerovResult {
    pub fn node_count(&self) -> u32 {
        self.wave.node_count
    }
}

/// `W` split as `w0 - mm E` on the grid, with the regular start near the
/// origin.
struct Shooter {
    grid: RadialGrid,
    w0: Vec<f64>,
    mm: Vec<f64>,
    c: f64,
    j0: usize,
    start: [f64; 2],
    matching: usize,
}

#[derive(Debug, Clone, Copy)]
struct Sweep {
    nodes: u32,
    /// `chi` at the two grid points where the sweep stopped, ordered by `r`.
    ends: [f64; 2],
}

impl Shooter {
    fn new(problem: &Problem, qn: &QuantumNumbers, grid: RadialGrid, r_match: f64) -> Result<Self> {
        let hbar2 = qn.hbar * qn.hbar;
        let ll = centrifugal(qn.l);
        let (mass, pot, amb) = (&problem.mass, &problem.potential, &problem.ambiguity);
        let mut w0 = Vec::with_capacity(grid.points);
        let mut mm = Vec::with_capacity(grid.points);
        for j in 0..grid.points {
            let r = grid.r(j);
            w0.push(ll / (r * r) + regular_w(mass, pot, amb, qn.hbar, 0.0, r));
            mm.push(2.0 * mass.value(r) / hbar2);
        }
        if w0.iter().chain(&mm).any(|v| !v.is_finite()) {
            return Err(Error::Domain("effective potential is not finite on the grid".into()));
        }
        let c = grid.h * grid.h / 12.0;
        let j0 = (0..grid.points)
            .find(|&j| c * w0[j] < 0.5)
            .filter(|&j| j + 3 < grid.points)
            .ok_or_else(|| Error::InvalidParameter("grid too coarse near the origin".into()))?;
        // chi ~ r^{l+1} (1 + b r) with b = w_{-1} / (2 (l + 1))
        let w_m1 = grid.r_min * regular_w(mass, pot, amb, qn.hbar, 0.0, grid.r_min);
        let b = w_m1 / (2.0 * (f64::from(qn.l) + 1.0));
        let frob = |r: f64| r.powi(qn.l as i32 + 1) * (1.0 + b * r);
        let start = [frob(grid.r(j0)), frob(grid.r(j0 + 1))];
        let matching = (((r_match - grid.r_min) / grid.h).round().max(0.0) as usize).clamp(j0 + 2, grid.points - 3);
        Ok(Self {
            grid,
            w0,
            mm,
            c,
            j0,
            start,
            matching,
        })
    }

    #[inline]
    fn t(&self, j: usize, e: f64) -> f64 {
        self.c * (self.w0[j] - self.mm[j] * e)
    }

    /// Integrates from the origin up to index `stop`.
    fn outward(&self, e: f64, stop: usize, mut store: Option<&mut Vec<f64>>) -> Sweep {
        let j0 = self.j0;
        let [mut chi_prev, mut chi] = self.start;
        let mut t = self.t(j0 + 1, e);
        let mut u_prev = (1.0 - self.t(j0, e)) * chi_prev;
        let mut u = (1.0 - t) * chi;
        let mut counter = NodeCounter::default();
        counter.push(chi_prev);
        counter.push(chi);
        if let Some(s) = store.as_deref_mut() {
            s.clear();
            s.resize(j0, 0.0);
            s.extend([chi_prev, chi]);
        }
        for j in j0 + 1..stop {
            let u_next = 2.0 * u - u_prev + 12.0 * t * chi;
            t = self.t(j + 1, e);
            let chi_next = u_next / (1.0 - t);
            counter.push(chi_next);
            (u_prev, u, chi_prev, chi) = (u, u_next, chi, chi_next);
            if let Some(s) = store.as_deref_mut() {
                s.push(chi);
            }
            if chi.abs() > RESCALE {
                let k = 1.0 / RESCALE;
                u_prev *= k;
                u *= k;
                chi_prev *= k;
                chi *= k;
                if let Some(s) = store.as_deref_mut() {
                    s.iter_mut().for_each(|v| *v *= k);
                }
            }
        }
        Sweep {
            nodes: counter.nodes,
            ends: [chi_prev, chi],
        }
    }

    /// Integrates from `r_max` down to index `stop`, starting from the decaying
    /// Langer-WKB branch (or `chi(r_max) = 0` where the tail is not forbidden).
    fn inward(&self, e: f64, stop: usize, mut store: Option<&mut Vec<f64>>) -> Sweep {
        let n = self.grid.points - 1;
        let h = self.grid.h;
        let r = self.grid.r(n);
        let w = |j: usize| self.t(j, e) / self.c;
        let (mut chi_prev, mut chi) = match langer_log_derivative(r, h, w(n), w(n - 1)) {
            Some(y) => (1.0, (-h * y).exp()),
            None => (0.0, 1.0),
        };
        let mut t = self.t(n - 1, e);
        let mut u_prev = (1.0 - self.t(n, e)) * chi_prev;
        let mut u = (1.0 - t) * chi;
        let mut counter = NodeCounter::default();
        counter.push(chi_prev);
        counter.push(chi);
        if let Some(s) = store.as_deref_mut() {
            s.clear();
            s.extend([chi_prev, chi]);
        }
        for j in (stop..n - 1).rev() {
            let u_next = 2.0 * u - u_prev + 12.0 * t * chi;
            t = self.t(j, e);
            let chi_next = u_next / (1.0 - t);
            counter.push(chi_next);
            (u_prev, u, chi_prev, chi) = (u, u_next, chi, chi_next);
            if let Some(s) = store.as_deref_mut() {
                s.push(chi);
            }
            if chi.abs() > RESCALE {
                let k = 1.0 / RESCALE;
                u_prev *= k;
                u *= k;
                chi_prev *= k;
                chi *= k;
                if let Some(s) = store.as_deref_mut() {
                    s.iter_mut().for_each(|v| *v *= k);
                }
            }
        }
        if let Some(s) = store {
            s.reverse();
        }
        Sweep {
            nodes: counter.nodes,
            ends: [chi, chi_prev],
        }
    }

    /// Number of eigenvalues of the box problem below `e`.
    fn sturm_count(&self, e: f64) -> u32 {
        self.outward(e, self.grid.points - 1, None).nodes
    }

    /// Normalized Wronskian of the outward and inward solutions at the
    /// matching point. Continuous in `e`, zero at eigenvalues.
    fn mismatch(&self, e: f64) -> f64 {
        let m = self.matching;
        let a = self.outward(e, m + 1, None).ends;
        let b = self.inward(e, m, None).ends;
        (a[0] * b[1] - a[1] * b[0]) / (a[0].hypot(a[1]) * b[0].hypot(b[1]))
    }

    fn wave(&self, e: f64) -> ReducedWave {
        let m = self.matching;
        let mut out = Vec::with_capacity(m + 2);
        let mut inn = Vec::with_capacity(self.grid.points - m);
        self.outward(e, m + 1, Some(&mut out));
        self.inward(e, m, Some(&mut inn));
        let k = if out[m].abs() >= out[m + 1].abs() {
            out[m] / inn[0]
        } else {
            out[m + 1] / inn[1]
        };
        out.truncate(m);
        out.extend(inn.iter().map(|v| v * k));
        ReducedWave::new(out)
    }
}

/// Eigenvalue of state `qn` on `grid`, searched around `e_guess` and matched
/// at `r_match`.
pub fn numerov_eigenvalue(
    problem: &Problem,
    qn: &QuantumNumbers,
    grid: &RadialGrid,
    e_guess: f64,
    r_match: f64,
) -> Result<NumerovResult> {
    let shooter = Shooter::new(problem, qn, *grid, r_match)?;
    let n_r = qn.n_r;
    let not_found = |reason: String| Error::StateNotFound { n_r, l: qn.l, reason };
    let mut evals = 0;

    // Sturm bracket: count(lo) <= n_r < count(hi)
    let width0 = BRACKET_WINDOW * e_guess.abs().max(1e-12);
    let (mut lo, mut hi) = (e_guess - width0, e_guess + width0);
    let mut width = width0;
    let mut count_lo = shooter.sturm_count(lo);
    evals += 1;
    let mut widenings = 0;
    while count_lo > n_r {
        widenings += 1;
        if widenings > MAX_WIDENINGS {
            return Err(not_found(format!("no lower bracket below E = {lo:e}")));
        }
        width *= 2.0;
        hi = lo;
        lo -= width;
        count_lo = shooter.sturm_count(lo);
        evals += 1;
    }
    width = width0;
    let mut count_hi = shooter.sturm_count(hi);
    evals += 1;
    while count_hi <= n_r {
        widenings += 1;
        if widenings > MAX_WIDENINGS {
            return Err(not_found(format!("no upper bracket above E = {hi:e}")));
        }
        width *= 2.0;
        lo = hi;
        hi += width;
        count_hi = shooter.sturm_count(hi);
        evals += 1;
    }
    // bisect until the bracket holds exactly this level and is narrow
    let scale = e_guess.abs().max(1e-12);
    let mut iterations = 0;
    loop {
        let isolated = shooter.sturm_count(lo) == n_r && count_hi == n_r + 1;
        if isolated && hi - lo < 1e-6 * scale {
            break;
        }
        iterations += 1;
        if iterations > MAX_ITERATIONS {
            return Err(Error::NotConverged { iterations, lo, hi });
        }
        let mid = 0.5 * (lo + hi);
        let c = shooter.sturm_count(mid);
        evals += 1;
        if c <= n_r {
            lo = mid;
        } else {
            hi = mid;
            count_hi = c;
        }
    }

    // the matched eigenvalue sits next to the box eigenvalue; widen until the
    // mismatch changes sign
    let mut f_lo = shooter.mismatch(lo);
    let mut f_hi = shooter.mismatch(hi);
    evals += 2;
    let mut pad = hi - lo;
    let mut expansions = 0;
    while f_lo * f_hi > 0.0 {
        expansions += 1;
        if expansions > 30 {
            return Err(Error::NotConverged { iterations, lo, hi });
        }
        lo -= pad;
        hi += pad;
        pad *= 2.0;
        f_lo = shooter.mismatch(lo);
        f_hi = shooter.mismatch(hi);
        evals += 2;
    }

    // Illinois regula falsi
    let tol = 1e-14 * scale.max(1.0);
    let mut side = 0;
    let mut root = 0.5 * (lo + hi);
    for _ in 0..MAX_ITERATIONS {
        if hi - lo < tol {
            break;
        }
        root = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
        if !(root > lo && root < hi) {
            root = 0.5 * (lo + hi);
        }
        let f = shooter.mismatch(root);
        evals += 1;
        if f == 0.0 {
            lo = root;
            hi = root;
            break;
        }
        if f * f_hi > 0.0 {
            hi = root;
            f_hi = f;
            if side == -1 {
                f_lo *= 0.5;
            }
            side = -1;
        } else {
            lo = root;
            f_lo = f;
            if side == 1 {
                f_hi *= 0.5;
            }
            side = 1;
        }
        if (hi - lo).abs() < tol {
            break;
        }
    }
    if hi - lo >= tol && (hi - lo) > 1e-12 * scale {
        return Err(Error::NotConverged {
            iterations: evals,
            lo,
            hi,
        });
    }
    let energy = if lo == hi { lo } else { root };
    let wave = shooter.wave(energy);
    if wave.node_count != n_r {
        return Err(not_found(format!(
            "converged to a level with {} nodes at E = {energy:e}",
            wave.node_count
        )));
    }
    Ok(NumerovResult {
        energy,
        wave,
        grid: *grid,
        iterations: evals,
    })
}

/// Seeds the search from the hbar expansion: its partial sum for the energy,
/// the orbit radius for the matching point and the default grid.
pub fn solve_state(problem: &Problem, qn: &QuantumNumbers) -> Result<NumerovResult> {
    let (e_guess, r0) = seed(problem, qn)?;
    let grid = RadialGrid::default_for(problem, qn, r0, e_guess)?;
    numerov_eigenvalue(problem, qn, &grid, e_guess, r0)
}

/// Like [`solve_state`], also solving on the refined grid; returns both.
pub fn solve_state_with_refinement(problem: &Problem, qn: &QuantumNumbers) -> Result<(NumerovResult, NumerovResult)> {
    let (e_guess, r0) = seed(problem, qn)?;
    let grid = RadialGrid::default_for(problem, qn, r0, e_guess)?;
    let coarse = numerov_eigenvalue(problem, qn, &grid, e_guess, r0)?;
    let fine = numerov_eigenvalue(problem, qn, &grid.refined(), coarse.energy, r0)?;
    Ok((coarse, fine))
}

fn seed(problem: &Problem, qn: &QuantumNumbers) -> Result<(f64, f64)> {
    let s = problem.spectrum(qn, DEFAULT_ORDER)?;
    let e = s.energy();
    if e.is_finite() {
        Ok((e, s.r0))
    } else {
        Ok((s.partials[0], s.r0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn table_problem(lambda: f64) -> Problem {
        Problem::coulomb_power_law(10.0, 0.5, 0.1, lambda).unwrap()
    }

    #[test]
    fn constant_mass_w_is_coulomb() {
        let p = table_problem(0.0);
        let qn = QuantumNumbers::new(0, 0);
        for r in [0.1, 1.0, 7.5] {
            let w = effective_w(&p.mass, &p.potential, &p.ambiguity, &qn, -2.0, r);
            assert_relative_eq!(w, 2.0 * 0.5 * (-10.0 / r + 2.0), max_relative = 1e-12);
        }
    }

    #[test]
    fn w_tail_is_positive_for_bound_energy() {
        let p = table_problem(3.0);
        let qn = QuantumNumbers::new(0, 2);
        let w = effective_w(&p.mass, &p.potential, &p.ambiguity, &qn, -1.25, 400.0);
        assert!(w > 0.0);
    }

    #[test]
    fn node_counter_tie_break() {
        assert_eq!(count_nodes(&[1.0, 0.0, -1.0]), 1);
        assert_eq!(count_nodes(&[1.0, 0.0, 1.0]), 0);
        assert_eq!(count_nodes(&[0.0, 1.0, -2.0, 3.0]), 2);
    }

    #[test]
    fn refined_grid_halves_the_step() {
        let g = RadialGrid::new(1e-6, 10.0, 1001).unwrap();
        let f = g.refined();
        assert_eq!(f.points, 2001);
        assert_relative_eq!(f.h, g.h / 2.0);
        assert_relative_eq!(f.r(f.points - 1), g.r_max, max_relative = 1e-12);
    }

    #[test]
    fn balmer_level() {
        let res = solve_state(&table_problem(0.0), &QuantumNumbers::new(0, 2)).unwrap();
        assert!((res.energy + 25.0 / 9.0).abs() < 1e-7, "{}", res.energy);
        assert_eq!(res.node_count(), 0);
    }

    #[test]
    fn excited_balmer_levels_have_their_nodes() {
        let p = table_problem(0.0);
        for (n_r, l) in [(1, 0), (2, 1), (3, 0)] {
            let qn = QuantumNumbers::new(n_r, l);
            let res = solve_state(&p, &qn).unwrap();
            let n = f64::from(qn.principal());
            assert!((res.energy + 25.0 / (n * n)).abs() < 1e-7, "{n_r},{l}: {}", res.energy);
            assert_eq!(res.node_count(), n_r);
        }
    }

    #[test]
    fn rejects_degenerate_grids() {
        assert!(RadialGrid::new(0.0, 1.0, 100).is_err());
        assert!(RadialGrid::new(1.0, 0.5, 100).is_err());
        assert!(RadialGrid::new(1e-3, 1.0, 4).is_err());
    }
}
