//! Comparison of two rational maps as branched coverings of the sphere.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::monodromy::{bouquet, monodromy, monodromy_group, MonodromyOptions};
use super::permutation::Permutation;
use super::{critical_data, Point, RationalMap};
use crate::error::Result;

/// Hurwitz move on generators `k` and `k + 1` of a tuple. The forward move
/// sends `(a, b)` to `(a b a⁻¹, a)`, the inverse move to `(b, b⁻¹ a b)`;
/// both keep the ordered product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidMove {
    pub index: usize,
    pub inverse: bool,
}

impl BraidMove {
    pub fn apply(&self, tuple: &[Permutation]) -> Vec<Permutation> {
        let mut out = tuple.to_vec();
        let (a, b) = (&tuple[self.index], &tuple[self.index + 1]);
        if self.inverse {
            out[self.index] = b.clone();
            out[self.index + 1] = b.inverse().then(a).then(b);
        } else {
            out[self.index] = a.then(b).then(&a.inverse());
            out[self.index + 1] = a.clone();
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CoveringVerdict {
    /// `relabeling` sends sheet `i` of the first map to sheet
    /// `relabeling(i)` of the second, after the braid moves (if any) were
    /// applied to the first tuple.
    Isomorphic {
        relabeling: Permutation,
        braids: Vec<BraidMove>,
    },
    NotIsomorphic {
        invariant: String,
    },
    Inconclusive {
        depth: usize,
    },
}

/// A permutation `p` with `p(g(i)) = h(p(i))` for every pair `(g, h)`, or
/// `None`. The tuples are assumed to generate transitive groups, so `p` is
/// fixed by the image of sheet 0.
pub fn simultaneous_conjugator(a: &[Permutation], b: &[Permutation]) -> Option<Permutation> {
    if a.len() != b.len() {
        return None;
    }
    let d = a.first().map(Permutation::degree)?;
    if b.iter().chain(a).any(|g| g.degree() != d) {
        return None;
    }
    'start: for j in 0..d {
        let mut p = vec![usize::MAX; d];
        let mut used = vec![false; d];
        p[0] = j;
        used[j] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            for (g, h) in a.iter().zip(b) {
                let (src, dst) = (g.apply(i), h.apply(p[i]));
                if p[src] == usize::MAX {
                    if used[dst] {
                        continue 'start;
                    }
                    p[src] = dst;
                    used[dst] = true;
                    queue.push_back(src);
                } else if p[src] != dst {
                    continue 'start;
                }
            }
        }
        if p.contains(&usize::MAX) {
            continue;
        }
        return Permutation::new(p).ok();
    }
    None
}

/// Relabels a transitive tuple into a canonical representative of its
/// class under simultaneous conjugation.
fn canonical(tuple: &[Permutation]) -> Vec<Vec<usize>> {
    let d = tuple[0].degree();
    let mut best: Option<Vec<Vec<usize>>> = None;
    for start in 0..d {
        // breadth-first numbering from `start`
        let mut label = vec![usize::MAX; d];
        let mut order = Vec::with_capacity(d);
        label[start] = 0;
        order.push(start);
        let mut k = 0;
        while k < order.len() {
            let i = order[k];
            for g in tuple {
                let j = g.apply(i);
                if label[j] == usize::MAX {
                    label[j] = order.len();
                    order.push(j);
                }
            }
            k += 1;
        }
        if order.len() < d {
            // not transitive: fall back to the raw tuple
            return tuple.iter().map(|g| g.images().to_vec()).collect();
        }
        let relabeled: Vec<Vec<usize>> = tuple
            .iter()
            .map(|g| order.iter().map(|&i| label[g.apply(i)]).collect())
            .collect();
        if best.as_ref().is_none_or(|b| relabeled < *b) {
            best = Some(relabeled);
        }
    }
    best.unwrap_or_default()
}

/// Breadth-first search for braid moves taking `from` to a tuple conjugate
/// to `to`, using at most `depth` moves.
pub fn hurwitz_equivalent(
    from: &[Permutation],
    to: &[Permutation],
    depth: usize,
) -> Option<(Vec<BraidMove>, Permutation)> {
    if from.len() != to.len() || from.is_empty() {
        return None;
    }
    let mut seen: HashSet<Vec<Vec<usize>>> = HashSet::from([canonical(from)]);
    let mut frontier: Vec<(Vec<Permutation>, Vec<BraidMove>)> = vec![(from.to_vec(), Vec::new())];
    for level in 0..=depth {
        let mut next = Vec::new();
        for (tuple, path) in frontier {
            if let Some(p) = simultaneous_conjugator(&tuple, to) {
                return Some((path, p));
            }
            if level == depth {
                continue;
            }
            for index in 0..tuple.len() - 1 {
                for inverse in [false, true] {
                    let mv = BraidMove { index, inverse };
                    let moved = mv.apply(&tuple);
                    if seen.insert(canonical(&moved)) {
                        let mut p = path.clone();
                        p.push(mv);
                        next.push((moved, p));
                    }
                }
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    None
}

/// Critical values with the local degrees above each, largest first, ones
/// included so that every partition sums to `d`.
fn branch_data(r: &RationalMap, root_tol: f64) -> Result<Vec<(Point, Vec<usize>)>> {
    let d = r.degree();
    let mut out: Vec<(Point, Vec<usize>)> = Vec::new();
    for c in critical_data(r, root_tol)? {
        let e = c.order + 1;
        match out
            .iter_mut()
            .find(|(v, _)| v.chordal(c.value) <= 1e3 * root_tol)
        {
            Some((_, parts)) => parts.push(e),
            None => out.push((c.value, vec![e])),
        }
    }
    for (_, parts) in &mut out {
        let used: usize = parts.iter().sum();
        parts.extend(std::iter::repeat_n(1, d.saturating_sub(used)));
        parts.sort_unstable_by(|a, b| b.cmp(a));
    }
    Ok(out)
}

/// Compares `r1` and `r2` as branched coverings: degree, branch values with
/// their ramification profiles, then the monodromy tuples of both maps
/// along one shared bouquet, which decide the question. When the second
/// map cannot be continued along the first map's loops, its own bouquet is
/// used and a braid search of the given depth relates the two tuples.
pub fn covering_isomorphic(
    r1: &RationalMap,
    r2: &RationalMap,
    opts: &MonodromyOptions,
    depth: usize,
) -> Result<CoveringVerdict> {
    let not = |s: &str| {
        Ok(CoveringVerdict::NotIsomorphic {
            invariant: s.into(),
        })
    };
    if r1.degree() != r2.degree() {
        return not("degree");
    }
    let b1 = branch_data(r1, opts.root_tol)?;
    let mut b2 = branch_data(r2, opts.root_tol)?;
    if b1.len() != b2.len() {
        return not("critical values");
    }
    for (v, parts) in &b1 {
        let Some(k) = b2
            .iter()
            .position(|(w, _)| v.chordal(*w) <= 1e3 * opts.root_tol)
        else {
            return not("critical values");
        };
        if &b2[k].1 != parts {
            return not("ramification profile");
        }
        b2.swap_remove(k);
    }

    let d = r1.degree();
    if d == 1 {
        return Ok(CoveringVerdict::Isomorphic {
            relabeling: Permutation::identity(1),
            braids: Vec::new(),
        });
    }
    let shared = bouquet(r1, opts)?;
    let g1 = shared
        .loops
        .iter()
        .map(|l| monodromy(r1, l, opts))
        .collect::<Result<Vec<_>>>()?;
    let g2: Result<Vec<_>> = shared
        .loops
        .iter()
        .map(|l| monodromy(r2, l, opts))
        .collect();
    match g2 {
        Ok(g2) => Ok(match simultaneous_conjugator(&g1, &g2) {
            Some(relabeling) => CoveringVerdict::Isomorphic {
                relabeling,
                braids: Vec::new(),
            },
            None => CoveringVerdict::NotIsomorphic {
                invariant: "monodromy tuple".into(),
            },
        }),
        Err(e) if e.is_numerical() => {
            let own = monodromy_group(r2, opts)?;
            Ok(match hurwitz_equivalent(&g1, &own.generators, depth) {
                Some((braids, relabeling)) => CoveringVerdict::Isomorphic { relabeling, braids },
                None => CoveringVerdict::Inconclusive { depth },
            })
        }
        Err(e) => Err(e),
    }
}
