//! RevLib REAL 2.0 writer for MCT-only networks.

use std::collections::HashSet;
use std::fmt::Write;

use super::{LineInput, LineOutput, RevGate, RevNetwork};
use crate::error::RevError;

fn sanitize(s: &str) -> String {
    s.chars().map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' }).collect()
}

/// One unique identifier per line.
pub fn variable_names(net: &RevNetwork) -> Vec<String> {
    let mut used = HashSet::new();
    net.lines
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let base = match (&l.input, &l.output) {
                (LineInput::Name(n), _) => sanitize(n),
                (LineInput::Zero, LineOutput::Name(n)) => sanitize(n),
                _ => format!("anc{i}"),
            };
            let mut name = if base.is_empty() { format!("l{i}") } else { base };
            if !used.insert(name.clone()) {
                name = format!("{name}_{i}");
                used.insert(name.clone());
            }
            name
        })
        .collect()
}

pub fn write_real(net: &RevNetwork) -> Result<String, RevError> {
    if let Some(i) = net.gates.iter().position(|g| !g.is_mct()) {
        return Err(RevError::NotMct(i));
    }
    let vars = variable_names(net);
    let mut out = String::new();
    writeln!(out, ".version 2.0").unwrap();
    writeln!(out, ".numvars {}", vars.len()).unwrap();
    writeln!(out, ".variables {}", vars.join(" ")).unwrap();
    let ins: Vec<String> = net
        .lines
        .iter()
        .map(|l| match &l.input {
            LineInput::Name(n) => sanitize(n),
            LineInput::Zero => "0".into(),
        })
        .collect();
    let outs: Vec<String> = net
        .lines
        .iter()
        .map(|l| match &l.output {
            LineOutput::Name(n) => sanitize(n),
            LineOutput::Zero => "0".into(),
            LineOutput::Garbage => "g".into(),
        })
        .collect();
    writeln!(out, ".inputs {}", ins.join(" ")).unwrap();
    writeln!(out, ".outputs {}", outs.join(" ")).unwrap();
    let consts: String = net.lines.iter().map(|l| if l.is_constant_input() { '0' } else { '-' }).collect();
    let garbage: String =
        net.lines.iter().map(|l| if l.output == LineOutput::Garbage { '1' } else { '-' }).collect();
    writeln!(out, ".constants {consts}").unwrap();
    writeln!(out, ".garbage {garbage}").unwrap();
    writeln!(out, ".begin").unwrap();
    for g in &net.gates {
        let RevGate::Mct { controls, target } = g else { unreachable!() };
        write!(out, "t{}", controls.len() + 1).unwrap();
        for &(c, pos) in controls {
            write!(out, " {}{}", if pos { "" } else { "-" }, vars[c]).unwrap();
        }
        writeln!(out, " {}", vars[*target]).unwrap();
    }
    writeln!(out, ".end").unwrap();
    Ok(out)
}
