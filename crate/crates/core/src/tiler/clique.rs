use crate::graph::{StandardMultigraph, VertexSet};
use crate::io::TileTag;

/// The light-edge profile of a vertex set and the clique classes it falls in,
/// relative to a target order `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueStatus {
    pub set: VertexSet,
    /// Every pair has positive multiplicity and the light pairs form a forest.
    pub is_full: bool,
    pub light_edge_count: usize,
    /// Light degree of each vertex of `set` inside `set`, in set order.
    pub light_degrees: Vec<usize>,
    pub fit: bool,
    pub near_matching: bool,
    pub acceptable: bool,
}

impl CliqueStatus {
    pub fn tag(&self) -> Option<TileTag> {
        TileTag::from_flags(self.fit, self.near_matching)
    }
}

pub fn clique_status(m: &StandardMultigraph, set: &VertexSet, s: usize) -> CliqueStatus {
    let vs = set.as_slice();
    let is_full = is_full(m, vs);
    let light_degrees: Vec<usize> = vs.iter().map(|&v| m.light_degree_into(v, vs)).collect();
    let light_edge_count = light_degrees.iter().sum::<usize>() / 2;
    let fit = is_full && fit_budget(light_edge_count, vs.len(), s);
    let near_matching = is_full && near_profile(&light_degrees, s);
    CliqueStatus {
        set: set.clone(),
        is_full,
        light_edge_count,
        light_degrees,
        fit,
        near_matching,
        acceptable: fit || near_matching,
    }
}

/// `‖K‖ˡ ≤ max{0, |K| − s/2}`, doubled to stay in integers.
fn fit_budget(light: usize, size: usize, s: usize) -> bool {
    2 * light <= (2 * size).saturating_sub(s)
}

fn near_profile(degrees: &[usize], s: usize) -> bool {
    degrees.iter().all(|&d| d <= 1)
        || (degrees.len() == s && degrees.iter().all(|&d| d <= 2) && degrees.iter().filter(|&&d| d == 2).count() <= 1)
}

pub(crate) fn is_full(m: &StandardMultigraph, set: &[usize]) -> bool {
    m.is_clique(set) && m.light_forest(set)
}

pub(crate) fn is_fit(m: &StandardMultigraph, set: &[usize], s: usize) -> bool {
    is_full(m, set) && fit_budget(m.light_edges_within(set), set.len(), s)
}

pub(crate) fn is_near_matching(m: &StandardMultigraph, set: &[usize], s: usize) -> bool {
    if !m.is_clique(set) {
        return false;
    }
    let degrees: Vec<usize> = set.iter().map(|&v| m.light_degree_into(v, set)).collect();
    // these profiles are unions of paths, hence forests
    near_profile(&degrees, s)
}

pub(crate) fn is_acceptable(m: &StandardMultigraph, set: &[usize], s: usize) -> bool {
    is_fit(m, set, s) || is_near_matching(m, set, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn with_light(n: usize, light: &[(usize, usize)]) -> StandardMultigraph {
        let mut m = StandardMultigraph::complete(n);
        for &(u, v) in light {
            m.set_multiplicity(u, v, 1).unwrap();
        }
        m
    }

    #[test]
    fn matching_of_two_is_fit_and_near() {
        let m = with_light(4, &[(0, 1), (2, 3)]);
        let st = clique_status(&m, &VertexSet::range(4), 4);
        assert_eq!(st.light_edge_count, 2);
        assert!(st.fit && st.near_matching && st.acceptable);
        assert_eq!(st.tag(), Some(TileTag::Both));
    }

    #[test]
    fn light_star_is_not_acceptable() {
        let m = with_light(4, &[(0, 1), (0, 2), (0, 3)]);
        let st = clique_status(&m, &VertexSet::range(4), 4);
        assert!(st.is_full);
        assert!(!st.fit && !st.near_matching && !st.acceptable);
        assert_eq!(st.tag(), None);
    }

    #[test]
    fn missing_pair_or_light_cycle_is_not_full() {
        let mut m = StandardMultigraph::complete(3);
        m.set_multiplicity(0, 1, 0).unwrap();
        assert!(!clique_status(&m, &VertexSet::range(3), 3).is_full);
        let tri = with_light(3, &[(0, 1), (1, 2), (0, 2)]);
        let st = clique_status(&tri, &VertexSet::range(3), 3);
        assert!(!st.is_full && !st.acceptable);
    }

    #[test]
    fn path_of_two_is_near_but_not_fit_for_three() {
        let m = with_light(3, &[(0, 1), (1, 2)]);
        let st = clique_status(&m, &VertexSet::range(3), 3);
        assert!(!st.fit && st.near_matching);
        assert!(is_acceptable(&m, &[0, 1, 2], 3) && !is_fit(&m, &[0, 1, 2], 3));
        assert!(!is_near_matching(&m, &[0, 1, 2], 4));
    }
}
