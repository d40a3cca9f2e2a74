//! Exact enumeration of self-avoiding walks and bridges.
//!
//! Two independent counting routes are provided: [`enumerate_census`], a
//! pruned depth-first search over self-avoiding extensions that is split at a
//! fixed prefix depth into parallel subtree tasks, and [`oracle_census`], a
//! deliberately naive sweep over all `(2d)^n` step sequences filtered through
//! the [`crate::walk`] predicates. The two must agree; the oracle is the
//! correctness reference for the fast path.

mod persist;

pub use persist::{load_census, save_census, PersistError, CENSUS_FORMAT_VERSION};

use crate::walk::{classify, is_self_avoiding, LatticeDim, Step, Walk};
use num_bigint::BigUint;
use thiserror::Error;

/// Default ceiling on the enumeration length (overridable per call).
pub const DEFAULT_MAX_LENGTH: usize = 32;
/// Largest length the unpruned oracle accepts.
pub const ORACLE_MAX_LENGTH: usize = 10;
/// Depth at which the DFS is split into independent subtree tasks.
const PREFIX_SPLIT_DEPTH: usize = 6;
/// Cap on occupancy-grid cells, `(2N+1)^d`, per worker.
const OCCUPANCY_CELL_LIMIT: u128 = 1 << 25;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CensusError {
    #[error("requested length {requested} exceeds the enumeration ceiling {ceiling}")]
    CeilingExceeded { requested: usize, ceiling: usize },
    #[error("oracle limited to N <= {ORACLE_MAX_LENGTH}, got {0}")]
    OracleTooLarge(usize),
    #[error("occupancy grid of (2*{n_max}+1)^{d} cells exceeds the resource limit")]
    ResourceLimit { d: u32, n_max: usize },
    #[error("inconsistent census arrays: {0}")]
    MalformedArrays(String),
}

/// Exact counts for one dimension up to a maximum length:
/// `c[n]` self-avoiding walks, `b[n]` bridges, and the height-resolved
/// refinement `bridge_by_height[n][h] = b_{n,h}` for `0 <= h <= n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    dim: LatticeDim,
    c: Vec<BigUint>,
    b: Vec<BigUint>,
    bridge_by_height: Vec<Vec<BigUint>>,
}

impl Census {
    /// Assemble a census from raw arrays, checking only structural shape
    /// (lengths and the triangular height matrix). Semantic invariants are
    /// the verify harness's job, so corrupted counts stay representable.
    pub fn from_parts(
        dim: LatticeDim,
        c: Vec<BigUint>,
        b: Vec<BigUint>,
        bridge_by_height: Vec<Vec<BigUint>>,
    ) -> Result<Self, CensusError> {
        if c.is_empty() || c.len() != b.len() || c.len() != bridge_by_height.len() {
            return Err(CensusError::MalformedArrays(format!(
                "array lengths c={} b={} heights={}",
                c.len(),
                b.len(),
                bridge_by_height.len()
            )));
        }
        for (n, row) in bridge_by_height.iter().enumerate() {
            if row.len() != n + 1 {
                return Err(CensusError::MalformedArrays(format!(
                    "height row {} has {} entries, expected {}",
                    n,
                    row.len(),
                    n + 1
                )));
            }
        }
        Ok(Census {
            dim,
            c,
            b,
            bridge_by_height,
        })
    }

    pub fn dim(&self) -> LatticeDim {
        self.dim
    }

    /// Largest enumerated length `N`.
    pub fn max_length(&self) -> usize {
        self.c.len() - 1
    }

    pub fn c(&self, n: usize) -> &BigUint {
        &self.c[n]
    }

    pub fn b(&self, n: usize) -> &BigUint {
        &self.b[n]
    }

    /// `b_{n,h}`: bridges of length `n` ending at height `h` (0 if `h > n`).
    pub fn bridges_at_height(&self, n: usize, h: usize) -> BigUint {
        if h > n {
            BigUint::from(0u32)
        } else {
            self.bridge_by_height[n][h].clone()
        }
    }

    pub fn walk_counts(&self) -> &[BigUint] {
        &self.c
    }

    pub fn bridge_counts(&self) -> &[BigUint] {
        &self.b
    }

    pub fn height_matrix(&self) -> &[Vec<BigUint>] {
        &self.bridge_by_height
    }

    /// `A(n, m) = sum_{h >= m} b_{n,h}`: bridges of length `n` reaching
    /// height at least `m`.
    pub fn bridges_reaching(&self, n: usize, m: usize) -> BigUint {
        let mut acc = BigUint::from(0u32);
        for h in m..=n {
            acc += &self.bridge_by_height[n][h];
        }
        acc
    }
}

/// Raw per-task tallies. Subtree counts stay far below `u128` at any
/// configuration the occupancy cap admits.
struct Tally {
    first_len: usize,
    c: Vec<u128>,
    b: Vec<u128>,
    bbh: Vec<Vec<u128>>,
}

impl Tally {
    fn new(first_len: usize, n_max: usize) -> Self {
        Tally {
            first_len,
            c: vec![0; n_max - first_len + 1],
            b: vec![0; n_max - first_len + 1],
            bbh: (first_len..=n_max).map(|n| vec![0; n + 1]).collect(),
        }
    }

    fn record(&mut self, len: usize, bridge_height: Option<i32>) {
        let i = len - self.first_len;
        self.c[i] += 1;
        if let Some(h) = bridge_height {
            self.b[i] += 1;
            self.bbh[i][h as usize] += 1;
        }
    }
}

/// Flat occupancy grid over the box `[-n_max, n_max]^d`.
struct Occupancy {
    cells: Vec<bool>,
    strides: Vec<i64>,
}

impl Occupancy {
    fn new(d: usize, n_max: usize) -> Self {
        let side = 2 * n_max as i64 + 1;
        let mut strides = Vec::with_capacity(d);
        let mut acc = 1i64;
        for _ in 0..d {
            strides.push(acc);
            acc *= side;
        }
        Occupancy {
            cells: vec![false; acc as usize],
            strides,
        }
    }

    fn origin_index(&self, n_max: usize) -> i64 {
        self.strides.iter().map(|s| s * n_max as i64).sum()
    }
}

struct Dfs {
    d: usize,
    n_max: usize,
    occ: Occupancy,
    /// Linear index of the current vertex into the occupancy grid.
    idx: i64,
    height: i32,
    height_axis: usize,
}

impl Dfs {
    /// Count the current node and recurse over self-avoiding extensions.
    /// `alive` means every vertex after the start so far has height >= 1,
    /// i.e. the subtree can still contribute bridges; once it drops the
    /// subtree is walked for `c` only.
    fn count(&mut self, len: usize, alive: bool, max_h: i32, tally: &mut Tally) {
        let bridge = alive && self.height >= max_h;
        tally.record(len, if bridge { Some(self.height) } else { None });
        if len == self.n_max {
            return;
        }
        let max_h = max_h.max(self.height);
        for axis in 0..self.d {
            let stride = self.occ.strides[axis];
            for delta in [1i64, -1i64] {
                let next = self.idx + delta * stride;
                if self.occ.cells[next as usize] {
                    continue;
                }
                let dh = if axis == self.height_axis { delta as i32 } else { 0 };
                self.occ.cells[next as usize] = true;
                self.idx = next;
                self.height += dh;
                let next_alive = alive && self.height >= 1;
                self.count(len + 1, next_alive, max_h, tally);
                self.height -= dh;
                self.idx -= delta * stride;
                self.occ.cells[next as usize] = false;
            }
        }
    }
}

/// A frozen DFS prefix from which an independent subtree task starts.
struct PrefixTask {
    steps: Vec<Step>,
    alive: bool,
    max_h: i32,
}

/// Walk the tree down to `split_depth`, tallying shallower nodes in place and
/// emitting one task per node at the split depth.
fn collect_prefixes(
    dfs: &mut Dfs,
    len: usize,
    split_depth: usize,
    alive: bool,
    max_h: i32,
    path: &mut Vec<Step>,
    tally: &mut Tally,
    tasks: &mut Vec<PrefixTask>,
) {
    if len == split_depth {
        tasks.push(PrefixTask {
            steps: path.clone(),
            alive,
            max_h,
        });
        return;
    }
    let bridge = alive && dfs.height >= max_h;
    tally.record(len, if bridge { Some(dfs.height) } else { None });
    let max_h = max_h.max(dfs.height);
    for axis in 0..dfs.d {
        let stride = dfs.occ.strides[axis];
        for delta in [1i64, -1i64] {
            let next = dfs.idx + delta * stride;
            if dfs.occ.cells[next as usize] {
                continue;
            }
            let dh = if axis == dfs.height_axis { delta as i32 } else { 0 };
            dfs.occ.cells[next as usize] = true;
            dfs.idx = next;
            dfs.height += dh;
            path.push(Step {
                axis: axis as u32,
                positive: delta > 0,
            });
            let next_alive = alive && dfs.height >= 1;
            collect_prefixes(dfs, len + 1, split_depth, next_alive, max_h, path, tally, tasks);
            path.pop();
            dfs.height -= dh;
            dfs.idx -= delta * stride;
            dfs.occ.cells[next as usize] = false;
        }
    }
}

fn fresh_dfs(d: usize, n_max: usize, height_axis: usize) -> Dfs {
    let occ = Occupancy::new(d, n_max);
    let idx = occ.origin_index(n_max);
    let mut dfs = Dfs {
        d,
        n_max,
        occ,
        idx,
        height: 0,
        height_axis,
    };
    dfs.occ.cells[dfs.idx as usize] = true;
    dfs
}

fn run_task(d: usize, n_max: usize, height_axis: usize, task: &PrefixTask) -> Tally {
    let mut dfs = fresh_dfs(d, n_max, height_axis);
    for s in &task.steps {
        let stride = dfs.occ.strides[s.axis as usize];
        dfs.idx += s.delta() as i64 * stride;
        dfs.occ.cells[dfs.idx as usize] = true;
        if s.axis as usize == height_axis {
            dfs.height += s.delta();
        }
    }
    let mut tally = Tally::new(task.steps.len(), n_max);
    dfs.count(task.steps.len(), task.alive, task.max_h, &mut tally);
    tally
}

fn tallies_to_census(d: LatticeDim, n_max: usize, tallies: Vec<Tally>) -> Census {
    let mut c = vec![BigUint::from(0u32); n_max + 1];
    let mut b = vec![BigUint::from(0u32); n_max + 1];
    let mut bbh: Vec<Vec<BigUint>> = (0..=n_max)
        .map(|n| vec![BigUint::from(0u32); n + 1])
        .collect();
    for t in tallies {
        for (i, v) in t.c.iter().enumerate() {
            c[t.first_len + i] += *v;
        }
        for (i, v) in t.b.iter().enumerate() {
            b[t.first_len + i] += *v;
        }
        for (i, row) in t.bbh.iter().enumerate() {
            for (h, v) in row.iter().enumerate() {
                bbh[t.first_len + i][h] += *v;
            }
        }
    }
    Census {
        dim: d,
        c,
        b,
        bridge_by_height: bbh,
    }
}

fn check_resources(d: LatticeDim, n_max: usize, ceiling: usize) -> Result<(), CensusError> {
    if n_max > ceiling {
        return Err(CensusError::CeilingExceeded {
            requested: n_max,
            ceiling,
        });
    }
    let side = 2 * n_max as u128 + 1;
    let mut cells = 1u128;
    for _ in 0..d.get() {
        cells = cells.saturating_mul(side);
        if cells > OCCUPANCY_CELL_LIMIT {
            return Err(CensusError::ResourceLimit { d: d.get(), n_max });
        }
    }
    Ok(())
}

/// Exact census by pruned parallel DFS. The result is a pure function of
/// `(d, n_max)`: the worker count only partitions the same exact sums.
pub fn enumerate_census(d: LatticeDim, n_max: usize, workers: usize) -> Result<Census, CensusError> {
    enumerate_census_with_limit(d, n_max, workers, DEFAULT_MAX_LENGTH)
}

/// Like [`enumerate_census`] with an explicit length ceiling.
pub fn enumerate_census_with_limit(
    d: LatticeDim,
    n_max: usize,
    workers: usize,
    ceiling: usize,
) -> Result<Census, CensusError> {
    check_resources(d, n_max, ceiling)?;
    let dd = d.get() as usize;
    let height_axis = d.height_axis();

    if n_max == 0 {
        let mut tally = Tally::new(0, 0);
        tally.record(0, Some(0));
        return Ok(tallies_to_census(d, 0, vec![tally]));
    }

    let split = PREFIX_SPLIT_DEPTH.min(n_max);
    let mut dfs = fresh_dfs(dd, n_max, height_axis);
    let mut prefix_tally = Tally::new(0, n_max);
    let mut tasks = Vec::new();
    let mut path = Vec::new();
    collect_prefixes(
        &mut dfs,
        0,
        split,
        true,
        0,
        &mut path,
        &mut prefix_tally,
        &mut tasks,
    );

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool");
    let task_tallies: Vec<Tally> = pool.install(|| {
        use rayon::prelude::*;
        tasks
            .par_iter()
            .map(|t| run_task(dd, n_max, height_axis, t))
            .collect()
    });

    let mut all = vec![prefix_tally];
    all.extend(task_tallies);
    Ok(tallies_to_census(d, n_max, all))
}

/// Unpruned oracle: for each `n <= n_max`, sweep all `(2d)^n` step sequences
/// and filter with the walk predicates. Algorithmically independent of
/// [`enumerate_census`].
pub fn oracle_census(d: LatticeDim, n_max: usize) -> Result<Census, CensusError> {
    if n_max > ORACLE_MAX_LENGTH {
        return Err(CensusError::OracleTooLarge(n_max));
    }
    let base = d.num_directions();
    let mut c = vec![BigUint::from(0u32); n_max + 1];
    let mut b = vec![BigUint::from(0u32); n_max + 1];
    let mut bbh: Vec<Vec<BigUint>> = (0..=n_max)
        .map(|n| vec![BigUint::from(0u32); n + 1])
        .collect();

    for n in 0..=n_max {
        let mut digits = vec![0u32; n];
        loop {
            let steps: Vec<Step> = digits.iter().map(|&k| Step::from_direction_index(k)).collect();
            let walk = Walk::new(d, steps).expect("valid direction index");
            if is_self_avoiding(&walk) {
                c[n] += 1u32;
                let cl = classify(&walk);
                if cl.is_bridge {
                    b[n] += 1u32;
                    bbh[n][cl.end_height as usize] += 1u32;
                }
            }
            // odometer over base-(2d) digits
            let mut pos = 0;
            while pos < n {
                digits[pos] += 1;
                if digits[pos] < base {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
            if pos == n {
                break;
            }
        }
    }
    Ok(Census {
        dim: d,
        c,
        b,
        bridge_by_height: bbh,
    })
}
