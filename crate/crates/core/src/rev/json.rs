//! JSON form of single-target-gate networks.

use serde_json::{json, Value};

use super::{ControlFunction, LineInput, LineOutput, RevGate, RevNetwork};
use crate::esop::{esop_from_cone, Cube, EsopCover, Lit};
use crate::tt::TruthTable;

fn cube_list(c: &EsopCover) -> Value {
    Value::Array(c.cubes.iter().map(|q| Value::String(q.to_pla(c.num_vars))).collect())
}

pub fn to_json(net: &RevNetwork) -> Value {
    let lines: Vec<Value> = net
        .lines
        .iter()
        .map(|l| {
            let i = match &l.input {
                LineInput::Name(n) => n.clone(),
                LineInput::Zero => "0".into(),
            };
            let o = match &l.output {
                LineOutput::Name(n) => Value::String(n.clone()),
                LineOutput::Zero => Value::String("0".into()),
                LineOutput::Garbage => Value::Null,
            };
            json!({ "in": i, "out": o })
        })
        .collect();
    let gates: Vec<Value> = net
        .gates
        .iter()
        .map(|g| match g {
            RevGate::Mct { controls, target } => json!({
                "kind": "mct",
                "controls": controls.iter().map(|c| c.0).collect::<Vec<_>>(),
                "polarity": controls.iter().map(|c| c.1).collect::<Vec<_>>(),
                "target": target,
            }),
            RevGate::SingleTarget { controls, function, target } => {
                let f = match function {
                    ControlFunction::Table(t) => Value::String(t.to_hex()),
                    ControlFunction::Esop(c) => cube_list(c),
                    ControlFunction::Cone(c) => cube_list(&esop_from_cone(c).expect("cone of <= 32 leaves")),
                };
                json!({ "kind": "stg", "controls": controls, "function": f, "target": target })
            }
        })
        .collect();
    json!({ "lines": lines, "gates": gates })
}

fn bad(msg: &str) -> String {
    format!("invalid network JSON: {msg}")
}

pub fn from_json(v: &Value) -> Result<RevNetwork, String> {
    let mut net = RevNetwork::new();
    for l in v["lines"].as_array().ok_or_else(|| bad("missing lines"))? {
        let input = match l["in"].as_str().ok_or_else(|| bad("line without in"))? {
            "0" => LineInput::Zero,
            n => LineInput::Name(n.into()),
        };
        let output = match &l["out"] {
            Value::Null => LineOutput::Garbage,
            Value::String(s) if s == "0" => LineOutput::Zero,
            Value::String(s) => LineOutput::Name(s.clone()),
            _ => return Err(bad("bad line output")),
        };
        net.add_line(input, output);
    }
    let idx = |x: &Value| x.as_u64().map(|u| u as usize).ok_or_else(|| bad("expected index"));
    for g in v["gates"].as_array().ok_or_else(|| bad("missing gates"))? {
        let controls: Vec<usize> =
            g["controls"].as_array().ok_or_else(|| bad("missing controls"))?.iter().map(idx).collect::<Result<_, _>>()?;
        let target = idx(&g["target"])?;
        let gate = match g["kind"].as_str() {
            Some("mct") => {
                let pol: Vec<bool> = match g["polarity"].as_array() {
                    Some(p) => p.iter().map(|b| b.as_bool().unwrap_or(true)).collect(),
                    None => vec![true; controls.len()],
                };
                if pol.len() != controls.len() {
                    return Err(bad("polarity length"));
                }
                RevGate::mct(controls.into_iter().zip(pol).collect(), target)
            }
            Some("stg") => {
                let n = controls.len() as u32;
                let f = match &g["function"] {
                    Value::String(h) => ControlFunction::Table(TruthTable::from_hex(n, h).ok_or_else(|| bad("bad table"))?),
                    Value::Array(cs) => {
                        let mut cubes = Vec::new();
                        for c in cs {
                            let s = c.as_str().ok_or_else(|| bad("bad cube"))?;
                            if s.len() != n as usize {
                                return Err(bad("cube width"));
                            }
                            let mut q = Cube::ONE;
                            for (i, ch) in s.chars().enumerate() {
                                q = match ch {
                                    '1' => q.with_lit(i as u32, Lit::Pos),
                                    '0' => q.with_lit(i as u32, Lit::Neg),
                                    '-' => q,
                                    _ => return Err(bad("bad cube character")),
                                };
                            }
                            cubes.push(q);
                        }
                        ControlFunction::Esop(EsopCover::from_cubes(n, cubes))
                    }
                    _ => return Err(bad("missing function")),
                };
                RevGate::stg(controls, f, target)
            }
            _ => return Err(bad("unknown gate kind")),
        };
        net.append_gate(gate).map_err(|e| bad(&e.to_string()))?;
    }
    Ok(net)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let mut r = RevNetwork::new();
        r.add_line(LineInput::Name("a".into()), LineOutput::Name("a".into()));
        r.add_line(LineInput::Name("b".into()), LineOutput::Name("b".into()));
        r.add_line(LineInput::Zero, LineOutput::Name("y".into()));
        r.add_line(LineInput::Zero, LineOutput::Garbage);
        r.append_gate(RevGate::stg(vec![0, 1], ControlFunction::Table(TruthTable::from_u64(2, 6)), 2)).unwrap();
        let cover = EsopCover::from_cubes(2, vec![Cube::new(3, 1)]);
        r.append_gate(RevGate::stg(vec![0, 1], ControlFunction::Esop(cover), 3)).unwrap();
        r.append_gate(RevGate::mct(vec![(0, false)], 3)).unwrap();
        let v = to_json(&r);
        assert_eq!(from_json(&v).unwrap(), r);
        assert_eq!(v["gates"][1]["function"][0], "10");
    }
}
