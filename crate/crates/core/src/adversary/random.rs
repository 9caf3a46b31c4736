use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{AdversaryError, GraphError};
use crate::graph::{Edge, Property, Schedule, Snapshot};

/// Seeded schedule that satisfies a connectivity property by construction.
///
/// T-Interval: the spanning tree drawn for block `j = r / T` is present in
/// rounds `jT..(j+2)T`, so every window of T rounds sees one tree in full.
/// T-Path and Connectivity Time: the last round of every aligned block is a
/// connected spanning graph; other rounds are arbitrary.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomSchedule {
    seed: u64,
    n: usize,
    property: Property,
    t: usize,
    density: f64,
}

pub fn gen_random_with_property(
    seed: u64,
    n: usize,
    property: Property,
    t: usize,
    density: f64,
) -> Result<RandomSchedule, AdversaryError> {
    if n < 2 || t == 0 || !(0.0..=1.0).contains(&density) {
        return Err(AdversaryError::Parameters(format!(
            "need n >= 2, T >= 1 and density in [0, 1]; got n={n}, T={t}, density={density}"
        )));
    }
    Ok(RandomSchedule {
        seed,
        n,
        property,
        t,
        density,
    })
}

const EXTRAS: u64 = 0;
const PORTS: u64 = 1;
const BLOCK_TREE: u64 = 2;
const ROUND_TREE: u64 = 3;

impl RandomSchedule {
    fn rng(&self, index: usize, tag: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(((index as u64) << 2) | tag);
        rng
    }

    fn tree(&self, mut rng: ChaCha8Rng) -> Vec<(usize, usize)> {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.shuffle(&mut rng);
        (1..self.n)
            .map(|i| {
                let j = rng.gen_range(0..i);
                (order[i], order[j])
            })
            .collect()
    }

    fn extras(&self, r: usize, out: &mut Vec<(usize, usize)>) {
        let mut rng = self.rng(r, EXTRAS);
        for a in 0..self.n {
            for b in a + 1..self.n {
                if rng.gen_bool(self.density) {
                    out.push((a, b));
                }
            }
        }
    }

    fn with_random_ports(&self, r: usize, pairs: Vec<(usize, usize)>) -> Result<Snapshot, GraphError> {
        let mut set: Vec<(usize, usize)> = pairs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        set.sort_unstable();
        set.dedup();
        let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for &(a, b) in &set {
            nbrs[a].push(b);
            nbrs[b].push(a);
        }
        let mut rng = self.rng(r, PORTS);
        for row in &mut nbrs {
            row.sort_unstable();
            row.shuffle(&mut rng);
        }
        let port = |x: usize, y: usize| nbrs[x].iter().position(|&w| w == y).expect("neighbour");
        Snapshot::new(
            self.n,
            set.iter().map(|&(a, b)| Edge::new(a, b, port(a, b), port(b, a))),
        )
    }
}

impl Schedule for RandomSchedule {
    fn n(&self) -> usize {
        self.n
    }

    fn horizon(&self) -> Option<usize> {
        None
    }

    fn snapshot(&self, r: usize) -> Result<Snapshot, GraphError> {
        let mut pairs = Vec::new();
        match self.property {
            Property::TInterval => {
                let j = r / self.t;
                pairs.extend(self.tree(self.rng(j, BLOCK_TREE)));
                if j > 0 {
                    pairs.extend(self.tree(self.rng(j - 1, BLOCK_TREE)));
                }
            }
            Property::TPath | Property::ConnectivityTime => {
                if r % self.t == self.t - 1 {
                    pairs.extend(self.tree(self.rng(r, ROUND_TREE)));
                }
            }
        }
        self.extras(r, &mut pairs);
        self.with_random_ports(r, pairs)
    }
}
