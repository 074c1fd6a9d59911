use serde::Serialize;
use serde_json::{json, Value};

use transversals::{Transversal, TransversalKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    /// A budget ran out; results are partial. Exit code 3.
    Inconclusive,
}

/// Machine-readable result of one command.
///
/// Everything except `timing` is a function of the inputs and the seed.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub status: Status,
    pub parameters: Value,
    pub seed: Option<u64>,
    pub results: Value,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Timing {
    pub wall_seconds: f64,
}

impl RunReport {
    pub fn new(command: &str, parameters: Value, seed: Option<u64>) -> RunReport {
        RunReport {
            command: command.to_string(),
            status: Status::Ok,
            parameters,
            seed,
            results: json!({}),
            warnings: Vec::new(),
            timing: None,
        }
    }

    pub fn with_results(mut self, results: Value) -> RunReport {
        self.results = results;
        self
    }

    pub fn exit_code(&self) -> u8 {
        match self.status {
            Status::Ok => 0,
            Status::Inconclusive => 3,
        }
    }
}

/// `{"pairs": [[u, v, color], ...]}`, plus the vertex order for cycles.
pub fn listing(t: &Transversal, num_vertices: usize) -> Value {
    let pairs: Vec<[usize; 3]> = t
        .pairs()
        .iter()
        .map(|&(e, c)| {
            let (u, v) = e.endpoints();
            [u, v, c]
        })
        .collect();
    match t.kind() {
        TransversalKind::Cycle => {
            let next = t.adjacency(num_vertices)[0].iter().copied().min();
            let order = next.and_then(|w| t.cycle_order_from(num_vertices, 0, w));
            json!({ "pairs": pairs, "cycle": order })
        }
        TransversalKind::Matching => json!({ "pairs": pairs }),
    }
}
