//! Direct mapping of a single-target gate: ESOP of its control function, one
//! MCT per cube, each lowered to Clifford+T.

use super::mct::{lower_mct, AncillaContext};
use super::CliffordTNetwork;
use crate::error::{Error, Result};
use crate::esop::{esop_from_cone, esop_from_table, minimize, EsopCover, EsopHeuristic};
use crate::rev::{ControlFunction, RevGate};

/// One MCT per cube; cube variable `i` is control line `controls[i]`.
pub fn mct_cascade(cover: &EsopCover, controls: &[usize], target: usize) -> Vec<RevGate> {
    cover
        .cubes
        .iter()
        .map(|c| {
            let ctrls = (0..cover.num_vars)
                .filter(|&v| c.mask >> v & 1 == 1)
                .map(|v| (controls[v as usize], c.polarity >> v & 1 == 1))
                .collect();
            RevGate::mct(ctrls, target)
        })
        .collect()
}

/// ESOP cover of a control function.
pub fn control_esop(f: &ControlFunction) -> Result<EsopCover> {
    match f {
        ControlFunction::Table(t) => Ok(esop_from_table(t)),
        ControlFunction::Esop(c) => Ok(c.clone()),
        ControlFunction::Cone(c) => esop_from_cone(c),
    }
}

/// Lower a single-target gate (or an MCT) into a `width`-qubit network.
/// Returns the network and the number of cubes after minimization.
pub fn map_stg_direct(
    gate: &RevGate,
    heuristic: EsopHeuristic,
    ctx: &AncillaContext,
    width: usize,
) -> Result<(CliffordTNetwork, usize)> {
    let mcts = match gate {
        RevGate::Mct { .. } => vec![gate.clone()],
        RevGate::SingleTarget { controls, function, target } => {
            if controls.len() > 32 {
                return Err(Error::EsopTooWide(controls.len()));
            }
            let cover = minimize(&control_esop(function)?, heuristic);
            mct_cascade(&cover, controls, *target)
        }
    };
    let mut out = CliffordTNetwork::new(width);
    for m in &mcts {
        let RevGate::Mct { controls, target } = m else { unreachable!() };
        let (c, _) = lower_mct(controls, *target, ctx, width)?;
        out.append(&c);
    }
    Ok((out, mcts.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tt::TruthTable;
    use crate::verify::simulate_unitary;

    #[test]
    fn majority_stg_is_exact() {
        let maj = TruthTable::from_u64(3, 0xe8);
        let g = RevGate::stg(vec![0, 1, 2], ControlFunction::Table(maj.clone()), 3);
        let ctx = AncillaContext::dirty([4]);
        let (c, cubes) = map_stg_direct(&g, EsopHeuristic::Def, &ctx, 5).unwrap();
        assert!(cubes <= 3);
        let u = simulate_unitary(&c).unwrap();
        let expect = crate::verify::Unitary::permutation(5, |i| if maj.get((i & 7) as u64) { i ^ 8 } else { i });
        assert!(u.equals_up_to_phase(&expect, 1e-9));
    }

    #[test]
    fn cascade_maps_variables() {
        let cover = EsopCover::from_cubes(2, vec![crate::esop::Cube::new(0b10, 0b00)]);
        assert_eq!(mct_cascade(&cover, &[5, 7], 1), vec![RevGate::mct(vec![(7, false)], 1)]);
    }
}
