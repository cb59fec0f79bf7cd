use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// A permutation of sheets `0..d`, stored as the image of each index.
/// Displayed and serialized in cycle notation on `1..=d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::InvalidArgument(format!(
                    "{images:?} is not a permutation"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(d: usize) -> Self {
        Permutation {
            images: (0..d).collect(),
        }
    }

    /// Builds a permutation of `0..d` from cycles on `1..=d`.
    pub fn from_cycles(d: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..d).collect();
        for cycle in cycles {
            for (k, &i) in cycle.iter().enumerate() {
                let j = cycle[(k + 1) % cycle.len()];
                if i == 0 || i > d || j == 0 || j > d {
                    return Err(Error::InvalidArgument(format!(
                        "cycle entry out of range 1..={d}"
                    )));
                }
                images[i - 1] = j - 1;
            }
        }
        Permutation::new(images)
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self` followed by `other`: `i ↦ other(self(i))`, the permutation of
    /// the concatenated loop.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    /// `p⁻¹ ∘ self ∘ p` in the `then` convention: relabels sheet `i` as
    /// `p(i)`.
    pub fn conjugate_by(&self, p: &Permutation) -> Permutation {
        p.inverse().then(self).then(p)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Cycles on `0..d`, each starting at its smallest element, fixed points
    /// included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut i = self.images[start];
            while i != start {
                seen[i] = true;
                cycle.push(i);
                i = self.images[i];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn order(&self) -> usize {
        self.cycle_type().into_iter().fold(1, lcm)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<Vec<usize>> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let items: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", items.join(" "))?;
        }
        Ok(())
    }
}

/// Whether the group generated by `gens` acts transitively on `0..d`.
pub fn is_transitive(d: usize, gens: &[Permutation]) -> bool {
    if d == 0 {
        return true;
    }
    let mut seen = vec![false; d];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(i) = queue.pop_front() {
        for g in gens {
            for j in [g.apply(i), g.inverse().apply(i)] {
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Order of the generated group by breadth-first closure, `None` once it
/// exceeds `cap`.
pub fn group_order(d: usize, gens: &[Permutation], cap: usize) -> Option<usize> {
    let id = Permutation::identity(d);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = p.then(g);
            if seen.insert(q.clone()) {
                if seen.len() > cap {
                    return None;
                }
                queue.push_back(q);
            }
        }
    }
    Some(seen.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_notation() {
        let p = Permutation::from_cycles(4, &[&[1, 3], &[2, 4]]).unwrap();
        assert_eq!(p.to_string(), "(1 3)(2 4)");
        assert_eq!(p.cycle_type(), vec![2, 2]);
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert!(Permutation::new(vec![0, 0]).is_err());
    }

    #[test]
    fn composition_convention() {
        let a = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[2, 3]]).unwrap();
        // 1 -a-> 2 -b-> 3
        assert_eq!(a.then(&b).apply(0), 2);
        assert!(a.then(&a.inverse()).is_identity());
        assert_eq!(a.then(&b).order(), 3);
    }

    #[test]
    fn symmetric_group_orders() {
        let t = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        let c = Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap();
        assert_eq!(group_order(3, &[t.clone(), c.clone()], 100), Some(6));
        assert_eq!(group_order(3, std::slice::from_ref(&c), 100), Some(3));
        assert!(is_transitive(3, &[c]));
        assert!(!is_transitive(3, &[t]));
        let s5 = [
            Permutation::from_cycles(5, &[&[1, 2]]).unwrap(),
            Permutation::from_cycles(5, &[&[1, 2, 3, 4, 5]]).unwrap(),
        ];
        assert_eq!(group_order(5, &s5, 1000), Some(120));
        assert_eq!(group_order(5, &s5, 50), None);
    }
}
