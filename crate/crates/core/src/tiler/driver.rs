use rand::seq::SliceRandom;
use rand::Rng;

use super::absorb::{try_family, TilerParams};
use super::almost::{almost_tiling_on, AlmostOptions};
use super::sponge::{is_sponge, perfect_acceptable_tiling};
use super::CliqueTiling;
use crate::error::{Error, Result};
use crate::graph::{StandardMultigraph, VertexSet};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TilingStats {
    /// Attempts used, including the successful one.
    pub attempts: usize,
    pub family_size: usize,
    /// Vertices the almost-perfect tiling left for absorption.
    pub almost_leftover: usize,
    pub absorbed_sets: usize,
    pub growth_moves: usize,
    pub improvement_moves: usize,
}

/// A perfect tiling of `m` by acceptable `s`-cliques.
///
/// Each attempt sets aside an absorbing family, tiles the rest with fit
/// cliques up to a bounded leftover, splits the leftover into `s`-sets and
/// gives each its own sponge from the family. A failed randomized stage
/// starts a new attempt; after `max_retries` the last failure is reported.
/// The result is certified before it is returned.
pub fn full_tiling(m: &StandardMultigraph, params: &TilerParams) -> Result<(CliqueTiling, TilingStats)> {
    params.validate()?;
    let (n, s) = (m.n(), params.s);
    if n % s != 0 {
        return Err(Error::InvalidParameter(format!("s = {s} does not divide n = {n}")));
    }
    if params.strict && !params.meets_degree(m) {
        return Err(Error::Precondition(format!(
            "minimum degree {} below 2(1-1/s)n + epsilon n",
            m.min_degree()
        )));
    }

    let mut last: (&'static str, String) = ("absorbing-family", String::new());
    for attempt in 0..params.max_retries {
        let mut rng = params.attempt_rng(attempt);
        let family = match try_family(m, params, &mut rng) {
            Ok(f) => f,
            Err(why) => {
                last = ("absorbing-family", why);
                continue;
            }
        };
        let q = family.images();
        if (q.len() as f64) >= params.epsilon * n as f64 / 2.0 && !family.is_empty() {
            return Err(Error::invariant(format!(
                "absorbing vertices {} not below epsilon n / 2",
                q.len()
            )));
        }

        let rest: Vec<usize> = (0..n).filter(|&v| !q.contains(v)).collect();
        let opts = AlmostOptions {
            strict: false,
            seed: rng.gen(),
        };
        let (almost, moves) = almost_tiling_on(m, &rest, s, &opts)?;

        let mut leftover = almost.leftover().clone().into_vec();
        leftover.shuffle(&mut rng);
        let sets: Vec<Vec<usize>> = leftover.chunks(s).map(<[usize]>::to_vec).collect();
        let Some(assignment) = assign_sponges(m, s, &sets, family.tuples()) else {
            last = (
                "absorption",
                format!("{} leftover sets, {} sponges, no perfect assignment", sets.len(), family.len()),
            );
            continue;
        };

        let mut tiles: Vec<VertexSet> = almost.tiles().to_vec();
        let mut absorbed = vec![None; family.len()];
        for (set, &z) in sets.iter().zip(&assignment) {
            absorbed[z] = Some(set);
        }
        for (z, tuple) in family.tuples().iter().enumerate() {
            let mut vertices = tuple.clone();
            if let Some(set) = absorbed[z] {
                vertices.extend_from_slice(set);
            }
            let part = perfect_acceptable_tiling(m, &vertices, s)
                .ok_or_else(|| Error::invariant(format!("sponge {tuple:?} no longer tiles")))?;
            tiles.extend(part.into_iter().map(VertexSet::from_unsorted));
        }
        tiles.sort_unstable_by_key(|t| t.min());
        let tiling = CliqueTiling::new(s, tiles, VertexSet::new());
        tiling.certify(m)?;
        let stats = TilingStats {
            attempts: attempt + 1,
            family_size: family.len(),
            almost_leftover: leftover.len(),
            absorbed_sets: sets.len(),
            growth_moves: moves.growth_moves,
            improvement_moves: moves.improvement_moves,
        };
        return Ok((tiling, stats));
    }
    Err(Error::ProbabilisticFailure {
        stage: last.0,
        attempts: params.max_retries,
        details: last.1,
    })
}

/// A distinct sponge for every set, by augmenting paths.
fn assign_sponges(m: &StandardMultigraph, s: usize, sets: &[Vec<usize>], tuples: &[Vec<usize>]) -> Option<Vec<usize>> {
    let options: Vec<Vec<usize>> = sets
        .iter()
        .map(|set| (0..tuples.len()).filter(|&z| is_sponge(m, s, &tuples[z], set)).collect())
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; tuples.len()];
    fn augment(i: usize, options: &[Vec<usize>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
        for &z in &options[i] {
            if seen[z] {
                continue;
            }
            seen[z] = true;
            if owner[z].is_none_or(|j| augment(j, options, owner, seen)) {
                owner[z] = Some(i);
                return true;
            }
        }
        false
    }
    for i in 0..sets.len() {
        let mut seen = vec![false; tuples.len()];
        if !augment(i, &options, &mut owner, &mut seen) {
            return None;
        }
    }
    let mut assignment = vec![0; sets.len()];
    for (z, o) in owner.iter().enumerate() {
        if let Some(i) = o {
            assignment[*i] = z;
        }
    }
    Some(assignment)
}
