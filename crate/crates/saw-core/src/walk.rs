//! Lattice geometry and walk classification.
//!
//! A walk lives on the hypercubic lattice `Z^d` (`d >= 2`), starts at the
//! origin, and is a sequence of unit steps along signed coordinate axes. The
//! last coordinate is the distinguished *height*: a self-avoiding bridge is a
//! self-avoiding walk whose height is uniquely minimized by its starting
//! point and maximized (not necessarily uniquely) by its endpoint.

use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WalkError {
    #[error("lattice dimension must be at least 2, got {0}")]
    InvalidDimension(u32),
    #[error("step axis {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: u32, dim: u32 },
}

/// Dimension of the ambient lattice, constrained to `d >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticeDim(u32);

impl LatticeDim {
    pub fn new(d: u32) -> Result<Self, WalkError> {
        if d < 2 {
            return Err(WalkError::InvalidDimension(d));
        }
        Ok(LatticeDim(d))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Number of signed unit directions, `2d`.
    pub fn num_directions(self) -> u32 {
        2 * self.0
    }

    /// Index of the height coordinate (the last one).
    pub fn height_axis(self) -> usize {
        self.0 as usize - 1
    }
}

/// A unit step along a signed coordinate direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Step {
    pub axis: u32,
    pub positive: bool,
}

impl Step {
    /// Decode a direction index in `0..2d`: axis `k/2`, sign from parity.
    pub fn from_direction_index(k: u32) -> Step {
        Step {
            axis: k / 2,
            positive: k % 2 == 0,
        }
    }

    pub fn delta(self) -> i32 {
        if self.positive {
            1
        } else {
            -1
        }
    }
}

/// A walk anchored at the origin. The empty walk (single vertex) is allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    dim: LatticeDim,
    steps: Vec<Step>,
}

impl Walk {
    pub fn new(dim: LatticeDim, steps: Vec<Step>) -> Result<Self, WalkError> {
        for s in &steps {
            if s.axis >= dim.get() {
                return Err(WalkError::AxisOutOfRange {
                    axis: s.axis,
                    dim: dim.get(),
                });
            }
        }
        Ok(Walk { dim, steps })
    }

    pub fn empty(dim: LatticeDim) -> Self {
        Walk { dim, steps: Vec::new() }
    }

    pub fn dim(&self) -> LatticeDim {
        self.dim
    }

    /// Number of steps, `|omega|`.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// The `len() + 1` vertices `v_0 = 0, v_k = v_{k-1} + step_k`.
    pub fn vertices(&self) -> Vec<Vec<i32>> {
        let d = self.dim.get() as usize;
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut pos = vec![0i32; d];
        out.push(pos.clone());
        for s in &self.steps {
            pos[s.axis as usize] += s.delta();
            out.push(pos.clone());
        }
        out
    }
}

/// Classification of a walk: SAW/SAB flags plus its height profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkClass {
    pub is_saw: bool,
    pub is_bridge: bool,
    pub end_height: i32,
    pub max_height: i32,
    pub min_height: i32,
}

/// True iff all `|omega| + 1` vertices are distinct.
pub fn is_self_avoiding(walk: &Walk) -> bool {
    let verts = walk.vertices();
    let mut seen: HashSet<&[i32]> = HashSet::with_capacity(verts.len());
    verts.iter().all(|v| seen.insert(v.as_slice()))
}

/// Classify a walk. A bridge is a SAW whose height is `>= 1` at every vertex
/// after the start and whose end height equals the maximum height. The empty
/// walk counts as both a SAW and a bridge, so that `c_0 = b_0 = 1` and the
/// bridge generating function has constant term 1.
pub fn classify(walk: &Walk) -> WalkClass {
    let h_axis = walk.dim.height_axis();
    let verts = walk.vertices();
    let heights: Vec<i32> = verts.iter().map(|v| v[h_axis]).collect();
    let end_height = *heights.last().unwrap();
    let max_height = *heights.iter().max().unwrap();
    let min_height = *heights.iter().min().unwrap();

    let is_saw = is_self_avoiding(walk);
    let above_start = heights.iter().skip(1).all(|&h| h >= 1);
    let is_bridge = is_saw && above_start && end_height == max_height;

    WalkClass {
        is_saw,
        is_bridge,
        end_height,
        max_height,
        min_height,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d2() -> LatticeDim {
        LatticeDim::new(2).unwrap()
    }

    fn walk2(steps: &[(u32, bool)]) -> Walk {
        Walk::new(
            d2(),
            steps.iter().map(|&(a, p)| Step { axis: a, positive: p }).collect(),
        )
        .unwrap()
    }

    const X: u32 = 0;
    const Y: u32 = 1; // height axis in d = 2

    #[test]
    fn dimension_must_be_at_least_two() {
        assert_eq!(LatticeDim::new(1), Err(WalkError::InvalidDimension(1)));
        assert_eq!(LatticeDim::new(0), Err(WalkError::InvalidDimension(0)));
        assert!(LatticeDim::new(2).is_ok());
    }

    #[test]
    fn axis_out_of_range_rejected() {
        let err = Walk::new(d2(), vec![Step { axis: 2, positive: true }]);
        assert_eq!(err, Err(WalkError::AxisOutOfRange { axis: 2, dim: 2 }));
    }

    #[test]
    fn empty_walk_is_self_avoiding_bridge() {
        let w = Walk::empty(d2());
        assert!(is_self_avoiding(&w));
        let cl = classify(&w);
        assert!(cl.is_saw);
        assert!(cl.is_bridge);
        assert_eq!(cl.end_height, 0);
    }

    #[test]
    fn immediate_reversal_revisits_origin() {
        let w = walk2(&[(Y, true), (Y, false)]);
        assert!(!is_self_avoiding(&w));
    }

    #[test]
    fn closed_unit_square_is_not_self_avoiding() {
        let w = walk2(&[(Y, true), (X, true), (Y, false), (X, false)]);
        assert!(!is_self_avoiding(&w));
    }

    #[test]
    fn single_up_step_is_a_bridge() {
        let cl = classify(&walk2(&[(Y, true)]));
        assert!(cl.is_bridge);
        assert_eq!(cl.end_height, 1);
    }

    #[test]
    fn single_sideways_step_is_saw_but_not_bridge() {
        let cl = classify(&walk2(&[(X, true)]));
        assert!(cl.is_saw);
        assert!(!cl.is_bridge);
        assert_eq!(cl.end_height, 0);
    }

    #[test]
    fn up_then_sideways_is_a_bridge() {
        // heights 0,1,1: min unique at start, endpoint attains the max.
        let cl = classify(&walk2(&[(Y, true), (X, true)]));
        assert!(cl.is_bridge);
        assert_eq!(cl.end_height, 1);
        assert_eq!(cl.max_height, 1);
    }

    #[test]
    fn up_over_down_is_saw_but_not_bridge() {
        // heights 0,1,1,0: final height 0 ties the start, min not unique.
        let cl = classify(&walk2(&[(Y, true), (X, true), (Y, false)]));
        assert!(cl.is_saw);
        assert!(!cl.is_bridge);
    }

    fn arb_walk(d: u32, max_len: usize) -> impl Strategy<Value = Walk> {
        let dim = LatticeDim::new(d).unwrap();
        prop::collection::vec(0..2 * d, 0..=max_len).prop_map(move |dirs| {
            Walk::new(dim, dirs.into_iter().map(Step::from_direction_index).collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn bridge_implies_self_avoiding(w in arb_walk(2, 12)) {
            let cl = classify(&w);
            prop_assert!(!cl.is_bridge || cl.is_saw);
        }

        #[test]
        fn bridge_end_height_between_one_and_length(w in arb_walk(3, 10)) {
            let cl = classify(&w);
            if cl.is_bridge && !w.is_empty() {
                prop_assert!(cl.end_height >= 1);
                prop_assert!(cl.end_height as usize <= w.len());
            }
        }

        /// Relabeling / reflecting the non-height axes never changes the class.
        #[test]
        fn classify_invariant_under_horizontal_symmetry(
            w in arb_walk(3, 10),
            swap in any::<bool>(),
            flip0 in any::<bool>(),
            flip1 in any::<bool>(),
        ) {
            let mapped: Vec<Step> = w.steps().iter().map(|s| {
                let mut axis = s.axis;
                let mut positive = s.positive;
                if axis < 2 && swap { axis = 1 - axis; }
                if axis == 0 && flip0 { positive = !positive; }
                if axis == 1 && flip1 { positive = !positive; }
                Step { axis, positive }
            }).collect();
            let w2 = Walk::new(w.dim(), mapped).unwrap();
            prop_assert_eq!(classify(&w), classify(&w2));
        }
    }
}
