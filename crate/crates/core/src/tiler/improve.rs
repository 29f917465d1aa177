use super::clique::is_fit;
use crate::error::{Error, Result};
use crate::graph::{StandardMultigraph, VertexSet};

/// Given disjoint fit `t`-cliques `X₁`, `X₂` and a fit `s`-clique `Y` with
/// `‖Xᵢ,Y‖ ≥ 2(s−1)t + 2 − i`, finds disjoint fit cliques of orders `t+1`
/// and `s` inside `X₁ ∪ X₂ ∪ Y`, returned in that order.
pub fn improve(
    m: &StandardMultigraph,
    x1: &VertexSet,
    x2: &VertexSet,
    y: &VertexSet,
    s: usize,
) -> Result<(VertexSet, VertexSet)> {
    let t = x1.len();
    check_preconditions(m, x1, x2, y, s)?;
    let (x1, x2, ys) = (x1.as_slice(), x2.as_slice(), y.as_slice());

    // ‖Xᵢ,y‖ = 2t − c  ⇒  y ∈ Yᵢᶜ
    let level = |x: &[usize], v: usize| 2 * t - m.degree_into(v, x);
    let light_in_y = |v: usize| m.light_degree_into(v, ys);

    let first = *x1
        .iter()
        .max_by_key(|&&v| (m.degree_into(v, ys), std::cmp::Reverse(v)))
        .expect("t >= 1");
    if m.degree_into(first, ys) + 1 < 2 * s {
        return Err(Error::invariant(format!("no vertex of {x1:?} has at most one light edge to {ys:?}")));
    }

    let output = |small: Vec<usize>, big: Vec<usize>| -> Result<(VertexSet, VertexSet)> {
        let (small, big) = (VertexSet::from_unsorted(small), VertexSet::from_unsorted(big));
        if small.len() != t + 1 || big.len() != s || !small.is_disjoint(&big) {
            return Err(Error::invariant("improvement produced cliques of the wrong shape"));
        }
        if !is_fit(m, small.as_slice(), s) || !is_fit(m, big.as_slice(), s) {
            return Err(Error::invariant(format!("improvement output {small:?}, {big:?} is not fit")));
        }
        Ok((small, big))
    };
    let plus = |set: &[usize], v: usize| {
        let mut out = set.to_vec();
        out.push(v);
        out
    };
    let swap = |v: usize, w: usize| -> Vec<usize> { ys.iter().map(|&u| if u == v { w } else { u }).collect() };

    // A vertex of Y with a light edge inside Y that X₂ or X₁ takes fully.
    if let Some(&v) = ys.iter().find(|&&v| level(x2, v) == 0 && light_in_y(v) >= 1) {
        return output(plus(x2, v), swap(v, first));
    }
    if let Some(&v) = ys.iter().find(|&&v| level(x1, v) == 0 && light_in_y(v) >= 1) {
        let rest: Vec<usize> = ys.iter().copied().filter(|&u| u != v).collect();
        let mut candidates = x2.to_vec();
        candidates.sort_by_key(|&u| (std::cmp::Reverse(m.degree_into(u, &rest)), u));
        let partner = candidates
            .into_iter()
            .find(|&u| m.light_degree_into(u, &rest) <= 1 && is_fit(m, &plus(&rest, u), s))
            .ok_or_else(|| Error::invariant("no vertex of X2 completes Y - y"))?;
        return output(plus(x1, v), plus(&rest, partner));
    }

    // Now no vertex of Y₁⁰ ∪ Y₂⁰ has a light edge inside Y.
    let top = if 2 * t < s { 0 } else { 1 };
    let y1_0: Vec<usize> = ys.iter().copied().filter(|&v| level(x1, v) == 0).collect();
    let y1_1: Vec<usize> = ys.iter().copied().filter(|&v| level(x1, v) == 1).collect();
    for &y2 in ys.iter().filter(|&&v| level(x2, v) <= top) {
        let side = larger_light_side(m, &y1_1, y2);
        let z1: Vec<usize> = y1_0
            .iter()
            .copied()
            .filter(|&v| v != y2)
            .chain(side)
            .take(s - t)
            .collect();
        if z1.len() < s - t {
            continue;
        }
        let mut big = x1.to_vec();
        big.extend_from_slice(&z1);
        let small = plus(x2, y2);
        if is_fit(m, &small, s) && is_fit(m, &big, s) {
            return output(small, big);
        }
    }
    Err(Error::invariant(format!(
        "no improvement found for X1 = {x1:?}, X2 = {x2:?}, Y = {ys:?}"
    )))
}

/// The larger colour class of a proper 2-colouring of the light forest on
/// `set − skip`, which is independent in `L`.
fn larger_light_side(m: &StandardMultigraph, set: &[usize], skip: usize) -> Vec<usize> {
    let vs: Vec<usize> = set.iter().copied().filter(|&v| v != skip).collect();
    let mut colour: Vec<Option<bool>> = vec![None; vs.len()];
    for start in 0..vs.len() {
        if colour[start].is_some() {
            continue;
        }
        colour[start] = Some(false);
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let c = colour[i].unwrap_or(false);
            for j in 0..vs.len() {
                if m.is_light(vs[i], vs[j]) && colour[j].is_none() {
                    colour[j] = Some(!c);
                    stack.push(j);
                }
            }
        }
    }
    let (a, b): (Vec<(usize, Option<bool>)>, Vec<_>) = vs.into_iter().zip(colour).partition(|(_, c)| *c == Some(false));
    let pick = if a.len() >= b.len() { a } else { b };
    pick.into_iter().map(|(v, _)| v).collect()
}

fn check_preconditions(m: &StandardMultigraph, x1: &VertexSet, x2: &VertexSet, y: &VertexSet, s: usize) -> Result<()> {
    let t = x1.len();
    for set in [x1, x2, y] {
        set.check_range(m.n())?;
    }
    if t == 0 || t >= s || x2.len() != t || y.len() != s {
        return Err(Error::Precondition(format!(
            "expected two t-sets with 1 <= t < s and an s-set, got sizes {}, {}, {} with s = {s}",
            t,
            x2.len(),
            y.len()
        )));
    }
    if !x1.is_disjoint(x2) || !x1.is_disjoint(y) || !x2.is_disjoint(y) {
        return Err(Error::Precondition("sets are not pairwise disjoint".into()));
    }
    for (name, set) in [("X1", x1), ("X2", x2), ("Y", y)] {
        if !is_fit(m, set.as_slice(), s) {
            return Err(Error::Precondition(format!("{name} = {set:?} is not a fit clique")));
        }
    }
    for (i, set) in [(1, x1), (2, x2)] {
        let have = m.between(set.as_slice(), y.as_slice());
        let need = 2 * (s - 1) * t + 2 - i;
        if have < need {
            return Err(Error::Precondition(format!("||X{i},Y|| = {have} is below {need}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_heavy_configuration() {
        let m = StandardMultigraph::complete(7);
        let (a, b) = improve(
            &m,
            &VertexSet::from_unsorted(vec![0, 1]),
            &VertexSet::from_unsorted(vec![2, 3]),
            &VertexSet::from_unsorted(vec![4, 5, 6]),
            3,
        )
        .unwrap();
        assert_eq!((a.len(), b.len()), (3, 3));
    }

    #[test]
    fn singleton_case_uses_the_light_swap() {
        // Y = {2,3,4} with light 2-3; X1 = {0} heavy to Y; X2 = {1} heavy to 2 only
        let mut m = StandardMultigraph::new(5);
        for (u, v, c) in [(2, 3, 1), (2, 4, 2), (3, 4, 2), (0, 2, 2), (0, 3, 2), (0, 4, 2), (1, 2, 2), (1, 3, 1), (1, 4, 1)] {
            m.set_multiplicity(u, v, c).unwrap();
        }
        let (a, b) = improve(
            &m,
            &VertexSet::from_unsorted(vec![0]),
            &VertexSet::from_unsorted(vec![1]),
            &VertexSet::from_unsorted(vec![2, 3, 4]),
            3,
        )
        .unwrap();
        assert_eq!(a.as_slice(), &[1, 2]);
        assert_eq!(b.as_slice(), &[0, 3, 4]);
    }

    #[test]
    fn rejects_weak_connection() {
        let mut m = StandardMultigraph::complete(5);
        m.set_multiplicity(0, 2, 0).unwrap();
        m.set_multiplicity(0, 3, 0).unwrap();
        let r = improve(
            &m,
            &VertexSet::from_unsorted(vec![0]),
            &VertexSet::from_unsorted(vec![1]),
            &VertexSet::from_unsorted(vec![2, 3, 4]),
            3,
        );
        assert!(matches!(r, Err(Error::Precondition(_))));
    }
}
