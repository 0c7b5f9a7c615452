//! Permutations of `{1, .., d}`, used both for the symmetric-group
//! projection and as the factors of Garside normal forms.

use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

/// A bijection of `{1, .., d}`. Stored zero-indexed internally; the public
/// interface and the JSON form are one-indexed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            map: (0..degree).collect(),
        }
    }

    /// The transposition `(index, index + 1)`, one-indexed.
    pub fn adjacent_transposition(degree: usize, index: usize) -> Self {
        assert!(index >= 1 && index < degree);
        let mut map: Vec<usize> = (0..degree).collect();
        map.swap(index - 1, index);
        Permutation { map }
    }

    /// The half-twist permutation `i -> d + 1 - i`.
    pub fn half_twist(degree: usize) -> Self {
        Permutation {
            map: (0..degree).rev().collect(),
        }
    }

    /// Build from one-indexed images; returns `None` unless bijective.
    pub fn from_images(images: &[usize]) -> Option<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        let mut map = Vec::with_capacity(d);
        for &v in images {
            if v < 1 || v > d || seen[v - 1] {
                return None;
            }
            seen[v - 1] = true;
            map.push(v - 1);
        }
        Some(Permutation { map })
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    /// Image of a one-indexed point.
    pub fn apply(&self, point: usize) -> usize {
        self.map[point - 1] + 1
    }

    /// One-indexed image list.
    pub fn images(&self) -> Vec<usize> {
        self.map.iter().map(|&v| v + 1).collect()
    }

    /// `self` followed by `other`: `(self.then(other))(x) = other(self(x))`.
    /// Matches word concatenation under the permutation projection.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.map.len(), other.map.len());
        Permutation {
            map: self.map.iter().map(|&v| other.map[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut map = vec![0; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            map[v] = i;
        }
        Permutation { map }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_transposition(&self) -> bool {
        self.map.iter().enumerate().filter(|&(i, &v)| i != v).count() == 2
    }

    /// The points moved by the permutation, one-indexed.
    pub fn support(&self) -> Vec<usize> {
        self.map
            .iter()
            .enumerate()
            .filter(|&(i, &v)| i != v)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Orbits of the group generated by `perms` acting on `{1, .., degree}`.
    pub fn orbit_count(degree: usize, perms: &[Permutation]) -> usize {
        let mut parent: Vec<usize> = (0..degree).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let root = find(parent, parent[x]);
                parent[x] = root;
            }
            parent[x]
        }
        for p in perms {
            assert_eq!(p.degree(), degree);
            for i in 0..degree {
                let a = find(&mut parent, i);
                let b = find(&mut parent, p.map[i]);
                if a != b {
                    parent[a] = b;
                }
            }
        }
        (0..degree).filter(|&i| find(&mut parent, i) == i).count()
    }

    /// Cycle notation, e.g. `(1 2)(3 4)`; `id` for the identity.
    pub fn cycles(&self) -> String {
        let d = self.map.len();
        let mut seen = vec![false; d];
        let mut out = String::new();
        for start in 0..d {
            if seen[start] || self.map[start] == start {
                continue;
            }
            out.push('(');
            let mut cur = start;
            let mut first = true;
            while !seen[cur] {
                seen[cur] = true;
                if !first {
                    out.push(' ');
                }
                first = false;
                out.push_str(&(cur + 1).to_string());
                cur = self.map[cur];
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("id");
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycles())
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.images().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Permutation, D::Error> {
        let images = Vec::<usize>::deserialize(deserializer)?;
        Permutation::from_images(&images)
            .ok_or_else(|| de::Error::custom("images do not form a bijection"))
    }
}
