use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::sponge::{is_sponge, perfect_acceptable_tiling};
use crate::error::{Error, Result};
use crate::graph::{StandardMultigraph, VertexSet};

/// Parameters of the absorbing tiler.
///
/// The constants under which the absorbing argument is proved make the
/// family empty for every graph that fits in memory, so the defaults are
/// practical values instead; [`TilerParams::in_proved_regime`]
/// reports whether a parameter set lies in the proved regime.
#[derive(Clone, Debug, PartialEq)]
pub struct TilerParams {
    pub s: usize,
    pub epsilon: f64,
    /// Family size is at most `βn/d`.
    pub beta: f64,
    /// Coverage target: each checked `s`-set needs `⌈γn⌉` sponges in the family.
    pub gamma: f64,
    pub seed: u64,
    pub max_retries: usize,
    /// Random `s`-sets checked for coverage per attempt.
    pub coverage_samples: usize,
    /// Reject inputs with `δ < 2(1 − 1/s)n + εn`.
    pub strict: bool,
}

impl TilerParams {
    pub fn new(s: usize) -> Self {
        TilerParams {
            s,
            epsilon: 0.2,
            beta: 0.09,
            gamma: 0.005,
            seed: 0,
            max_retries: 20,
            coverage_samples: 200,
            strict: true,
        }
    }

    /// Tuple length `d = s²`.
    pub fn d(&self) -> usize {
        self.s * self.s
    }

    /// `φ = εᵈ/2`, the density of sponges per `s`-set.
    pub fn phi(&self) -> f64 {
        self.epsilon.powi(self.d() as i32) / 2.0
    }

    /// `β < φ/(2d)`, `γ < 2β(φ/(2d) − β)` and `β, γ < min{φ, ε/2}`.
    pub fn in_proved_regime(&self) -> bool {
        let cap = self.phi() / (2.0 * self.d() as f64);
        let small = self.phi().min(self.epsilon / 2.0);
        self.beta > 0.0
            && self.beta < cap
            && self.gamma > 0.0
            && self.gamma < 2.0 * self.beta * (cap - self.beta)
            && self.beta < small
            && self.gamma < small
    }

    /// Checks the practical constraints: `0 < β < ε/2` (so the absorbing
    /// vertices stay below `εn/2`) and `0 < γ ≤ β/d` (so the coverage target
    /// does not exceed the family size).
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.s < 2 {
            return bad(format!("s must be at least 2, got {}", self.s));
        }
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return bad(format!("epsilon must be positive, got {}", self.epsilon));
        }
        if !(self.beta > 0.0 && self.beta < self.epsilon / 2.0) {
            return bad(format!("beta must lie in (0, epsilon/2), got {}", self.beta));
        }
        if !(self.gamma > 0.0 && self.gamma <= self.beta / self.d() as f64) {
            return bad(format!("gamma must lie in (0, beta/d], got {}", self.gamma));
        }
        if self.max_retries == 0 {
            return bad("max_retries must be positive".into());
        }
        Ok(())
    }

    /// `⌊βn/d⌋`.
    pub fn family_target(&self, n: usize) -> usize {
        (self.beta * n as f64 / self.d() as f64).floor() as usize
    }

    pub(crate) fn coverage_needed(&self, n: usize) -> usize {
        ((self.gamma * n as f64).ceil() as usize).max(1)
    }

    pub(crate) fn attempt_rng(&self, attempt: usize) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ (attempt as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    /// `δ(M) ≥ 2(1 − 1/s)n + εn`.
    pub(crate) fn meets_degree(&self, m: &StandardMultigraph) -> bool {
        let n = m.n() as f64;
        let s = self.s as f64;
        m.min_degree() as f64 + 1e-9 >= 2.0 * (1.0 - 1.0 / s) * n + self.epsilon * n
    }
}

/// Disjoint `d`-tuples whose images tile perfectly, each meant to absorb
/// one leftover `s`-set `S` for which it is an `S`-sponge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbsorbingFamily {
    s: usize,
    tuples: Vec<Vec<usize>>,
    /// Tuples drawn while building the family.
    pub drawn: usize,
    /// `s`-sets whose coverage was checked, and the number of sponges each needed.
    pub coverage_checked: usize,
    pub coverage_needed: usize,
}

impl AbsorbingFamily {
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    /// Union of the tuple images.
    pub fn images(&self) -> VertexSet {
        VertexSet::from_unsorted(self.tuples.concat())
    }

    /// Indices of the tuples that are `S`-sponges for `set`.
    pub fn sponges_for(&self, m: &StandardMultigraph, set: &[usize]) -> Vec<usize> {
        (0..self.tuples.len())
            .filter(|&i| is_sponge(m, self.s, &self.tuples[i], set))
            .collect()
    }
}

/// Builds an absorbing family, retrying with fresh randomness until the
/// coverage check passes.
pub fn build_absorbing_family(m: &StandardMultigraph, params: &TilerParams) -> Result<AbsorbingFamily> {
    params.validate()?;
    if params.strict && !params.meets_degree(m) {
        return Err(Error::Precondition(format!(
            "minimum degree {} below 2(1-1/s)n + epsilon n",
            m.min_degree()
        )));
    }
    let mut last = String::new();
    for attempt in 0..params.max_retries {
        match try_family(m, params, &mut params.attempt_rng(attempt)) {
            Ok(f) => return Ok(f),
            Err(why) => last = why,
        }
    }
    Err(Error::ProbabilisticFailure {
        stage: "absorbing-family",
        attempts: params.max_retries,
        details: last,
    })
}

/// One sampling round: draw random `d`-tuples of distinct vertices, keep
/// those disjoint from the kept ones whose image tiles perfectly, stop at
/// `⌊βn/d⌋` tuples, then check coverage on random `s`-sets outside the
/// family. An empty target skips the coverage check.
pub(crate) fn try_family<R: Rng>(
    m: &StandardMultigraph,
    params: &TilerParams,
    rng: &mut R,
) -> std::result::Result<AbsorbingFamily, String> {
    let n = m.n();
    let (s, d) = (params.s, params.d());
    let target = params.family_target(n);
    let mut family = AbsorbingFamily {
        s,
        tuples: Vec::new(),
        drawn: 0,
        coverage_checked: 0,
        coverage_needed: params.coverage_needed(n),
    };
    if target == 0 || n < d {
        return Ok(family);
    }
    let mut used = vec![false; n];
    let budget = 50 * target + 50;
    while family.tuples.len() < target && family.drawn < budget {
        family.drawn += 1;
        let tuple = sample(rng, n, d).into_vec();
        if tuple.iter().any(|&v| used[v]) || perfect_acceptable_tiling(m, &tuple, s).is_none() {
            continue;
        }
        for &v in &tuple {
            used[v] = true;
        }
        family.tuples.push(tuple);
    }
    if family.tuples.len() < target {
        return Err(format!(
            "kept {} of {target} tuples after {} draws",
            family.tuples.len(),
            family.drawn
        ));
    }

    let outside: Vec<usize> = (0..n).filter(|&v| !used[v]).collect();
    if outside.len() < s {
        return Ok(family);
    }
    for _ in 0..params.coverage_samples {
        let set: Vec<usize> = sample(rng, outside.len(), s).into_iter().map(|i| outside[i]).collect();
        family.coverage_checked += 1;
        let have = family
            .tuples
            .iter()
            .filter(|z| is_sponge(m, s, z, &set))
            .take(family.coverage_needed)
            .count();
        if have < family.coverage_needed {
            return Err(format!(
                "s-set {set:?} has {have} sponges in the family, needs {}",
                family.coverage_needed
            ));
        }
    }
    Ok(family)
}
