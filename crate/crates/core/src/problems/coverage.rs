use fixedbitset::FixedBitSet;

use super::Graph;
use crate::subset::Subset;

/// Maximum coverage: item `i` is the set `sets[i]` over `0..universe_size`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageInstance {
    universe_size: usize,
    sets: Vec<FixedBitSet>,
}

impl CoverageInstance {
    pub fn new(universe_size: usize, sets: &[Vec<usize>]) -> Self {
        let sets = sets
            .iter()
            .map(|elems| {
                let mut bs = FixedBitSet::with_capacity(universe_size);
                for &e in elems {
                    assert!(e < universe_size, "element {e} outside universe");
                    bs.insert(e);
                }
                bs
            })
            .collect();
        CoverageInstance {
            universe_size,
            sets,
        }
    }

    /// `S_v = {v} ∪ out-neighbours(v)` for every vertex.
    pub fn from_graph(graph: &Graph) -> Self {
        let n = graph.n_vertices();
        let sets = (0..n)
            .map(|v| {
                let mut bs = FixedBitSet::with_capacity(n);
                bs.insert(v);
                for &w in graph.out_neighbors(v) {
                    bs.insert(w as usize);
                }
                bs
            })
            .collect();
        CoverageInstance {
            universe_size: n,
            sets,
        }
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn n_sets(&self) -> usize {
        self.sets.len()
    }

    pub fn set(&self, i: usize) -> &FixedBitSet {
        &self.sets[i]
    }

    /// `|⋃_{i ∈ selection} S_i|`.
    pub fn value(&self, selection: &Subset) -> usize {
        let mut covered = FixedBitSet::with_capacity(self.universe_size);
        for i in selection.items() {
            covered.union_with(&self.sets[i]);
        }
        covered.count_ones(..)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_unions() {
        let inst = CoverageInstance::new(3, &[vec![0, 1], vec![1, 2]]);
        assert_eq!(inst.value(&Subset::empty(2)), 0);
        assert_eq!(inst.value(&Subset::full(2)), 3);
        assert_eq!(inst.value(&Subset::from_items(2, [1])), 2);
    }

    #[test]
    fn sets_from_graph() {
        let edgeless = CoverageInstance::from_graph(&Graph::new(3, &[], true));
        for i in 0..3 {
            assert_eq!(edgeless.set(i).ones().collect::<Vec<_>>(), vec![i]);
        }

        let g = Graph::new(2, &[(0, 1)], true);
        let inst = CoverageInstance::from_graph(&g);
        assert_eq!(inst.set(0).ones().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(inst.set(1).ones().collect::<Vec<_>>(), vec![1]);

        let star: Vec<_> = (1..=5).map(|v| (0, v)).collect();
        let inst = CoverageInstance::from_graph(&Graph::new(6, &star, true));
        assert_eq!(inst.set(0).count_ones(..), 6);
    }
}
