//! Published numbers for known benchmark names, reported next to ours.

use serde::Serialize;

use super::reference_data::{EPFL, FLOATING_POINT};
use super::{InputFormat, MappingStrategy};
use crate::esop::EsopHeuristic;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReferenceRow {
    pub suite: &'static str,
    pub benchmark: &'static str,
    pub realization: Option<&'static str>,
    pub lut_size: usize,
    pub qubits: u64,
    pub t_count: u64,
}

/// Rows matching a benchmark file stem under the given parameters. EPFL
/// AIGER inputs are compared with the original realization, BLIF inputs with
/// the LUT realization.
pub fn lookup(
    stem: &str,
    format: InputFormat,
    lut_size: usize,
    mapping: MappingStrategy,
    heuristic: EsopHeuristic,
) -> Vec<ReferenceRow> {
    let col = match (heuristic, mapping) {
        (EsopHeuristic::Def, MappingStrategy::Direct) => 0,
        (EsopHeuristic::DefWo4, MappingStrategy::Direct) => 1,
        (EsopHeuristic::Def, MappingStrategy::Hybrid) => 2,
        (EsopHeuristic::DefWo4, MappingStrategy::Hybrid) => 3,
        (EsopHeuristic::None, _) => return vec![],
    };
    let stem = stem.to_ascii_lowercase();
    let realization = match format {
        InputFormat::Aiger => "Original",
        InputFormat::Blif => "Best-LUT",
    };
    let mut out: Vec<ReferenceRow> = EPFL
        .iter()
        .filter(|r| r.0 == stem && r.1 == realization && r.2 == lut_size)
        .map(|r| ReferenceRow {
            suite: "epfl",
            benchmark: r.0,
            realization: Some(r.1),
            lut_size: r.2,
            qubits: r.3,
            t_count: r.4[col],
        })
        .collect();
    if col == 3 {
        out.extend(FLOATING_POINT.iter().filter(|r| r.0 == stem && r.1 == lut_size).map(|r| ReferenceRow {
            suite: "floating_point",
            benchmark: r.0,
            realization: None,
            lut_size: r.1,
            qubits: r.2,
            t_count: r.3,
        }));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adder_best_lut() {
        let r = lookup("adder", InputFormat::Blif, 6, MappingStrategy::Hybrid, EsopHeuristic::DefWo4);
        assert_eq!(r.len(), 1);
        assert_eq!((r[0].qubits, r[0].t_count), (448, 12_721));
        assert!(lookup("adder", InputFormat::Blif, 6, MappingStrategy::Hybrid, EsopHeuristic::None).is_empty());
        assert_eq!(lookup("add-16", InputFormat::Aiger, 16, MappingStrategy::Hybrid, EsopHeuristic::DefWo4)[0].qubits, 156);
    }

    #[test]
    fn tables_are_complete() {
        assert_eq!(EPFL.len(), 60);
        assert_eq!(FLOATING_POINT.len(), 111);
    }
}
