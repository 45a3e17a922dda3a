//! Multi-degrees in ℕ^k and grading degrees in ℤ^k.
//!
//! A k-graph assigns every path a degree in ℕ^k, ordered componentwise.
//! Differences of path degrees live in ℤ^k and grade the algebra.

use std::fmt;

/// An element of ℕ^k, the degree of a path.
///
/// Ordered componentwise; `join` is the componentwise maximum (written m∨n).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MultiDegree {
    coords: Vec<u32>,
}

impl MultiDegree {
    pub fn new(coords: Vec<u32>) -> Self {
        MultiDegree { coords }
    }

    pub fn zero(k: usize) -> Self {
        MultiDegree { coords: vec![0; k] }
    }

    /// The standard basis vector e_i for a 1-based color i.
    pub fn basis(k: usize, color: usize) -> Self {
        debug_assert!(1 <= color && color <= k);
        let mut coords = vec![0; k];
        coords[color - 1] = 1;
        MultiDegree { coords }
    }

    pub fn uniform(k: usize, value: u32) -> Self {
        MultiDegree {
            coords: vec![value; k],
        }
    }

    pub fn arity(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> u32 {
        self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn total(&self) -> u32 {
        self.coords.iter().sum()
    }

    /// Componentwise partial order: m ≤ n iff m_i ≤ n_i for all i.
    pub fn leq(&self, other: &MultiDegree) -> bool {
        self.coords.iter().zip(&other.coords).all(|(a, b)| a <= b)
    }

    /// Componentwise maximum m∨n.
    pub fn join(&self, other: &MultiDegree) -> MultiDegree {
        MultiDegree {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn add(&self, other: &MultiDegree) -> MultiDegree {
        MultiDegree {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Componentwise difference; `None` unless other ≤ self.
    pub fn checked_sub(&self, other: &MultiDegree) -> Option<MultiDegree> {
        if other.leq(self) {
            Some(MultiDegree {
                coords: self
                    .coords
                    .iter()
                    .zip(&other.coords)
                    .map(|(a, b)| a - b)
                    .collect(),
            })
        } else {
            None
        }
    }

    /// The difference self − other in ℤ^k.
    pub fn grade_diff(&self, other: &MultiDegree) -> GradeDegree {
        GradeDegree {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| *a as i64 - *b as i64)
                .collect(),
        }
    }

    /// All degrees n with 0 ≤ n ≤ self, in lexicographic order.
    pub fn box_iter(&self) -> Vec<MultiDegree> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.coords.len()];
        loop {
            out.push(MultiDegree {
                coords: cur.clone(),
            });
            // increment odometer
            let mut i = self.coords.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < self.coords[i] {
                    cur[i] += 1;
                    for c in cur.iter_mut().skip(i + 1) {
                        *c = 0;
                    }
                    break;
                }
            }
        }
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

/// An element of ℤ^k, the grading group of the algebra.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GradeDegree {
    coords: Vec<i64>,
}

impl GradeDegree {
    pub fn new(coords: Vec<i64>) -> Self {
        GradeDegree { coords }
    }

    pub fn zero(k: usize) -> Self {
        GradeDegree { coords: vec![0; k] }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &GradeDegree) -> GradeDegree {
        GradeDegree {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn neg(&self) -> GradeDegree {
        GradeDegree {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Display for GradeDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}
