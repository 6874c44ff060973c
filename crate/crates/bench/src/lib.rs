//! Fixtures shared by the benches.

use std::sync::Arc;

use gt_core::algebra::rat;
use gt_core::chevalley::{build_lie_algebra, LieAlgebraData};
use gt_core::realization::RealizationContext;
use gt_core::roots::{build_root_system, WeightVec};

pub fn algebra(kind: char, rank: usize) -> Arc<LieAlgebraData> {
    Arc::new(build_lie_algebra(&build_root_system(kind, rank).expect("valid type")))
}

/// A generic rational weight, so no coefficient vanishes by accident.
pub fn generic_lambda(rank: usize) -> WeightVec {
    WeightVec((0..rank as i64).map(|i| rat(2 * i + 1, i + 2)).collect())
}

/// A fresh context with empty image caches.
pub fn context(l: &Arc<LieAlgebraData>) -> RealizationContext {
    RealizationContext::new(l.clone(), generic_lambda(l.rank())).expect("rank matches")
}

pub fn module_context(l: &Arc<LieAlgebraData>) -> RealizationContext {
    RealizationContext::for_module(l.clone(), &generic_lambda(l.rank())).expect("rank matches")
}
