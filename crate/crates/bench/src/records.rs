//! JSON-lines record of one solved plan.

use mtsp_core::exact::{ExactResult, ExactStatus};
use mtsp_core::instance::{Instance, RoutePlan};
use serde::{Deserialize, Serialize};

/// One line of `solve` output. Exact-solver fields are absent for heuristics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanRecord {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub algorithm: String,
    /// 1-based node labels, each route starting and ending at the depot.
    pub routes: Vec<Vec<usize>>,
    pub per_route_distance: Vec<f64>,
    pub total_distance: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub status: Option<ExactStatus>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lower_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub nodes_explored: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time: Option<f64>,
}

impl PlanRecord {
    pub fn from_plan(instance: &Instance<f64>, algorithm: &str, plan: &RoutePlan<f64>) -> Self {
        Self {
            instance: instance.name().to_string(),
            n: instance.n(),
            m: plan.salesmen(),
            algorithm: algorithm.to_string(),
            routes: plan.routes().to_vec(),
            per_route_distance: plan.per_route_distance().to_vec(),
            total_distance: plan.total_distance(),
            status: None,
            lower_bound: None,
            nodes_explored: None,
            wall_time: None,
        }
    }

    /// `None` when the result carries no plan.
    pub fn from_exact(instance: &Instance<f64>, algorithm: &str, result: &ExactResult<f64>) -> Option<Self> {
        let plan = result.best.as_ref()?;
        Some(Self {
            status: Some(result.status),
            lower_bound: Some(result.lower_bound),
            nodes_explored: Some(result.nodes_explored),
            wall_time: Some(result.wall_time),
            ..Self::from_plan(instance, algorithm, plan)
        })
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("plan record serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mtsp_core::instance::fixtures;
    use mtsp_core::nearest_node;

    #[test]
    fn round_trip() {
        let g = fixtures::garn9::<f64>();
        let plan = nearest_node(&g, 2).unwrap();
        let rec = PlanRecord::from_plan(&g, "nearest", &plan);
        let line = rec.to_json_line();
        assert!(!line.contains("status"));
        assert!(!line.contains('\n'));
        let back: PlanRecord = serde_json::from_str(&line).unwrap();
        assert_eq!(back, rec);
        assert_eq!(back.routes[0], vec![1, 6, 7, 8, 9, 1]);
    }
}
