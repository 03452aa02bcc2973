//! ASCII AIGER (`aag`), combinational subset.

use std::collections::HashMap;
use std::fmt::Write;

use super::{GateFunction, LogicNetwork, Signal, Vertex, VertexKind};
use crate::error::{NetworkError, ParseError};
use crate::tt::TruthTable;

fn and2() -> GateFunction {
    GateFunction::Table(TruthTable::from_u64(2, 0b1000))
}

fn parse_nums(line: &str, lineno: usize, want: usize) -> Result<Vec<u64>, ParseError> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    if toks.len() != want {
        return Err(ParseError::new(lineno, format!("expected {want} fields, found {}", toks.len())));
    }
    toks.iter()
        .map(|t| t.parse::<u64>().map_err(|_| ParseError::new(lineno, format!("not a number: {t:?}"))))
        .collect()
}

pub fn parse_aiger(text: &str) -> Result<LogicNetwork, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (hl, header) = lines.next().ok_or_else(|| ParseError::new(1, "empty input"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.first() != Some(&"aag") {
        return Err(ParseError::new(hl, "header must start with `aag`"));
    }
    if toks.len() != 6 {
        return Err(ParseError::new(hl, "header must be `aag M I L O A`"));
    }
    let nums = parse_nums(&toks[1..].join(" "), hl, 5)?;
    let (m, ni, nl, no, na) = (nums[0], nums[1], nums[2], nums[3], nums[4]);
    if nl != 0 {
        return Err(ParseError::new(hl, format!("latch count {nl} is nonzero; only combinational AIGs are supported")));
    }
    if ni + na > m {
        return Err(ParseError::new(hl, format!("M = {m} is smaller than I + A = {}", ni + na)));
    }
    let eof_line = text.lines().count() + 1;
    let mut next = |what: &str| {
        lines.next().ok_or_else(|| ParseError::new(eof_line, format!("unexpected end of file reading {what}")))
    };
    let check_lit = |lit: u64, ln: usize| {
        if lit / 2 > m {
            Err(ParseError::new(ln, format!("literal {lit} out of range (M = {m})")))
        } else {
            Ok(lit)
        }
    };

    // variable -> (vertex id, defining line)
    let mut var_vertex: HashMap<u64, (usize, usize)> = HashMap::new();
    let mut input_lines = Vec::new();
    for _ in 0..ni {
        let (ln, l) = next("inputs")?;
        let lit = check_lit(parse_nums(l, ln, 1)?[0], ln)?;
        if lit < 2 || lit % 2 == 1 {
            return Err(ParseError::new(ln, format!("input literal {lit} must be even and nonzero")));
        }
        if var_vertex.insert(lit / 2, (input_lines.len(), ln)).is_some() {
            return Err(ParseError::new(ln, format!("variable {} defined twice", lit / 2)));
        }
        input_lines.push(ln);
    }
    let mut outputs = Vec::new();
    for _ in 0..no {
        let (ln, l) = next("outputs")?;
        outputs.push((check_lit(parse_nums(l, ln, 1)?[0], ln)?, ln));
    }
    let mut ands = Vec::new();
    for k in 0..na {
        let (ln, l) = next("and gates")?;
        let v = parse_nums(l, ln, 3)?;
        for &lit in &v {
            check_lit(lit, ln)?;
        }
        if v[0] < 2 || v[0] % 2 == 1 {
            return Err(ParseError::new(ln, format!("AND output literal {} must be even and nonzero", v[0])));
        }
        if var_vertex.insert(v[0] / 2, (ni as usize + k as usize, ln)).is_some() {
            return Err(ParseError::new(ln, format!("variable {} defined twice", v[0] / 2)));
        }
        ands.push((v[1], v[2], ln));
    }

    let mut in_names: HashMap<usize, String> = HashMap::new();
    let mut out_names: HashMap<usize, String> = HashMap::new();
    for (ln, l) in lines {
        if l == "c" || l.starts_with("c ") {
            break;
        }
        if l.trim().is_empty() {
            continue;
        }
        let (sym, name) = l.split_once(' ').ok_or_else(|| ParseError::new(ln, "malformed symbol line"))?;
        let (kind, idx) = sym.split_at(1);
        let idx: usize = idx.parse().map_err(|_| ParseError::new(ln, format!("bad symbol index {idx:?}")))?;
        match kind {
            "i" if idx < ni as usize => in_names.insert(idx, name.to_string()),
            "o" if idx < no as usize => out_names.insert(idx, name.to_string()),
            "l" => return Err(ParseError::new(ln, "latch symbol in combinational file")),
            _ => return Err(ParseError::new(ln, format!("bad symbol {sym:?}"))),
        };
    }

    let mut vertices: Vec<Vertex> = (0..ni as usize)
        .map(|i| Vertex {
            kind: VertexKind::Input,
            fanin: vec![],
            function: None,
            name: Some(in_names.remove(&i).unwrap_or_else(|| format!("i{i}"))),
        })
        .collect();
    let const_id = ni as usize + na as usize;
    let mut uses_const = false;
    let resolve = |lit: u64, ln: usize, uses_const: &mut bool| -> Result<Signal, ParseError> {
        if lit < 2 {
            *uses_const = true;
            return Ok(Signal::new(const_id, lit == 1));
        }
        match var_vertex.get(&(lit / 2)) {
            Some(&(id, _)) => Ok(Signal::new(id, lit % 2 == 1)),
            None => Err(ParseError::new(ln, format!("literal {lit} references undefined variable {}", lit / 2))),
        }
    };
    for &(a, b, ln) in &ands {
        let fanin = vec![resolve(a, ln, &mut uses_const)?, resolve(b, ln, &mut uses_const)?];
        vertices.push(Vertex { kind: VertexKind::Gate, fanin, function: Some(and2()), name: None });
    }
    let mut out_vertices = Vec::new();
    for (k, &(lit, ln)) in outputs.iter().enumerate() {
        out_vertices.push(Vertex {
            kind: VertexKind::Output,
            fanin: vec![resolve(lit, ln, &mut uses_const)?],
            function: None,
            name: Some(out_names.remove(&k).unwrap_or_else(|| format!("o{k}"))),
        });
    }
    if uses_const {
        vertices.push(Vertex {
            kind: VertexKind::Gate,
            fanin: vec![],
            function: Some(GateFunction::Table(TruthTable::zero(0))),
            name: None,
        });
    }
    vertices.extend(out_vertices);
    let and_line = |id: usize| ands.get(id.wrapping_sub(ni as usize)).map(|a| a.2).unwrap_or(hl);
    LogicNetwork::from_vertices(vertices).map_err(|e| match e {
        NetworkError::Cycle(v) => ParseError::new(and_line(v), "cyclic definition"),
        other => ParseError::new(hl, other.to_string()),
    })
}

/// Write an AIG-shaped network; fails on non-AND gates.
pub fn write_aiger(net: &LogicNetwork) -> Result<String, NetworkError> {
    if !net.is_aig() {
        return Err(NetworkError::Malformed("network is not an AIG".into()));
    }
    let mut lit = vec![0u64; net.len()];
    let mut next_var = 1u64;
    for &i in net.inputs() {
        lit[i] = 2 * next_var;
        next_var += 1;
    }
    let mut ands = Vec::new();
    for v in net.gates_topo() {
        if net.fanin(v).is_empty() {
            let GateFunction::Table(t) = net.function(v).unwrap() else { unreachable!() };
            lit[v] = t.get(0) as u64;
            continue;
        }
        lit[v] = 2 * next_var;
        next_var += 1;
        ands.push(v);
    }
    let sig = |s: &Signal| lit[s.node] ^ s.neg as u64;
    let mut out = String::new();
    let m = next_var - 1;
    writeln!(out, "aag {} {} 0 {} {}", m, net.inputs().len(), net.outputs().len(), ands.len()).unwrap();
    for &i in net.inputs() {
        writeln!(out, "{}", lit[i]).unwrap();
    }
    for &y in net.outputs() {
        writeln!(out, "{}", sig(&net.fanin(y)[0])).unwrap();
    }
    for &g in &ands {
        let f = net.fanin(g);
        writeln!(out, "{} {} {}", lit[g], sig(&f[0]), sig(&f[1])).unwrap();
    }
    for (k, &i) in net.inputs().iter().enumerate() {
        if let Some(n) = net.name(i) {
            writeln!(out, "i{k} {n}").unwrap();
        }
    }
    for (k, &y) in net.outputs().iter().enumerate() {
        if let Some(n) = net.name(y) {
            writeln!(out, "o{k} {n}").unwrap();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_network() {
        let n = parse_aiger("aag 0 0 0 0 0\n").unwrap();
        assert_eq!((n.inputs().len(), n.outputs().len(), n.len()), (0, 0, 0));
    }

    #[test]
    fn single_and() {
        let n = parse_aiger("aag 3 2 0 1 1\n2\n4\n6\n6 2 4\n").unwrap();
        assert_eq!(n.output_tables()[0].to_hex(), "8");
        assert!(n.is_aig());
    }

    #[test]
    fn constants_and_complements() {
        let n = parse_aiger("aag 1 1 0 3 0\n2\n0\n1\n3\n").unwrap();
        let t: Vec<String> = n.output_tables().iter().map(|t| t.to_hex()).collect();
        assert_eq!(t, vec!["0", "3", "1"]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("aag 1 1 1 0 0\n2\n", 1),
            ("aig 1 1 0 0 0\n", 1),
            ("aag 2 1 0 1 1\n2\n4\n4 2 9\n", 4),
            ("aag 3 1 0 1 2\n2\n4\n4 6 2\n6 4 2\n", 4),
            ("aag 3 1 0 1 1\n2\n4\n4 2 6\n", 4),
            ("aag 2 1 0 1 1\n3\n4\n4 2 2\n", 2),
        ];
        for (text, line) in cases {
            let e = parse_aiger(text).unwrap_err();
            assert_eq!(e.line, line, "{text:?}: {e}");
        }
    }

    #[test]
    fn symbols_and_roundtrip() {
        let text = "aag 3 2 0 1 1\n2\n4\n7\n6 3 4\ni0 a\ni1 b\no0 y\nc\nfree text\n";
        let n = parse_aiger(text).unwrap();
        assert_eq!(n.name(n.inputs()[1]), Some("b"));
        let again = parse_aiger(&write_aiger(&n).unwrap()).unwrap();
        assert_eq!(again.output_tables(), n.output_tables());
        assert_eq!(again.num_gates(), n.num_gates());
    }
}
