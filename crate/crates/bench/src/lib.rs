//! Fixtures shared by the criterion benches.

use std::sync::Arc;

use nilconn::report::build_orbit;
use nilconn::{AlgebraId, OrbitContext, OrbitKind};

pub fn orbit(algebra: &str, kind: OrbitKind) -> Arc<OrbitContext> {
    let id: AlgebraId = algebra.parse().expect("supported algebra");
    build_orbit(id, kind, None).expect("orbit context")
}
