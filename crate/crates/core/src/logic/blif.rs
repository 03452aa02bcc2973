//! BLIF combinational subset: `.model`, `.inputs`, `.outputs`, `.names`, `.end`.

use std::collections::{HashMap, HashSet};
use std::fmt::Write;

use super::{GateFunction, LogicNetwork, Signal, Vertex, VertexId, VertexKind};
use crate::error::{NetworkError, ParseError};
use crate::tt::{TruthTable, MAX_DENSE_VARS};

struct NamesBlock {
    line: usize,
    inputs: Vec<String>,
    output: String,
    rows: Vec<(String, char, usize)>,
}

/// Join `\` continuations and strip comments; yields (first line number, text).
fn logical_lines(text: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut start = 0;
    for (i, raw) in text.lines().enumerate() {
        let l = raw.split('#').next().unwrap_or("");
        if cur.is_empty() {
            start = i + 1;
        }
        if let Some(stripped) = l.trim_end().strip_suffix('\\') {
            cur.push_str(stripped);
            cur.push(' ');
            continue;
        }
        cur.push_str(l);
        if !cur.trim().is_empty() {
            out.push((start, cur.trim().to_string()));
        }
        cur.clear();
    }
    if !cur.trim().is_empty() {
        out.push((start, cur.trim().to_string()));
    }
    out
}

pub fn parse_blif(text: &str) -> Result<LogicNetwork, ParseError> {
    let mut inputs: Vec<(String, usize)> = Vec::new();
    let mut outputs: Vec<(String, usize)> = Vec::new();
    let mut blocks: Vec<NamesBlock> = Vec::new();
    let mut ended = false;
    for (ln, l) in logical_lines(text) {
        if ended {
            if l.starts_with(".model") {
                return Err(ParseError::new(ln, "multiple models are not supported"));
            }
            continue;
        }
        let mut toks = l.split_whitespace();
        let head = toks.next().unwrap();
        if head.starts_with('.') {
            match head {
                ".model" => {}
                ".inputs" => inputs.extend(toks.map(|t| (t.to_string(), ln))),
                ".outputs" => outputs.extend(toks.map(|t| (t.to_string(), ln))),
                ".names" => {
                    let mut sigs: Vec<String> = toks.map(str::to_string).collect();
                    let output =
                        sigs.pop().ok_or_else(|| ParseError::new(ln, ".names needs at least an output"))?;
                    blocks.push(NamesBlock { line: ln, inputs: sigs, output, rows: vec![] });
                }
                ".end" => ended = true,
                other => return Err(ParseError::new(ln, format!("unsupported directive {other}"))),
            }
            continue;
        }
        let b = blocks.last_mut().ok_or_else(|| ParseError::new(ln, "cover row outside .names"))?;
        let toks: Vec<&str> = l.split_whitespace().collect();
        let (cube, val) = match (b.inputs.len(), toks.as_slice()) {
            (0, [v]) => ("", *v),
            (_, [c, v]) => (*c, *v),
            _ => return Err(ParseError::new(ln, "malformed cover row")),
        };
        if cube.len() != b.inputs.len() {
            return Err(ParseError::new(
                ln,
                format!("cover row width {} does not match {} inputs", cube.len(), b.inputs.len()),
            ));
        }
        if cube.chars().any(|c| !matches!(c, '0' | '1' | '-')) {
            return Err(ParseError::new(ln, format!("bad cube {cube:?}")));
        }
        let v = match val {
            "1" => '1',
            "0" => '0',
            _ => return Err(ParseError::new(ln, format!("bad output value {val:?}"))),
        };
        b.rows.push((cube.to_string(), v, ln));
    }

    let mut tables = Vec::with_capacity(blocks.len());
    let mut defined: HashMap<&str, usize> = HashMap::new();
    for (k, b) in blocks.iter().enumerate() {
        if inputs.iter().any(|(n, _)| *n == b.output) || defined.insert(&b.output, k).is_some() {
            return Err(ParseError::new(b.line, format!("signal {} defined twice", b.output)));
        }
        tables.push(block_table(b)?);
    }
    // Single-input buffers and inverters become (possibly complemented)
    // references to their source.
    let alias = |k: usize| -> Option<(&str, bool)> {
        let b = &blocks[k];
        match (b.inputs.len(), tables[k].as_u64()) {
            (1, 0b10) => Some((b.inputs[0].as_str(), false)),
            (1, 0b01) => Some((b.inputs[0].as_str(), true)),
            _ => None,
        }
    };
    let resolve = |name: &str, line: usize| -> Result<(String, bool), ParseError> {
        let (mut cur, mut neg) = (name, false);
        for _ in 0..=blocks.len() {
            match defined.get(cur).and_then(|&k| alias(k)) {
                Some((src, n)) => {
                    cur = src;
                    neg ^= n;
                }
                None => return Ok((cur.to_string(), neg)),
            }
        }
        Err(ParseError::new(line, "cyclic definition"))
    };

    let mut id_of: HashMap<String, VertexId> = HashMap::new();
    let mut vertices: Vec<Vertex> = Vec::new();
    for (name, ln) in &inputs {
        if id_of.insert(name.clone(), vertices.len()).is_some() {
            return Err(ParseError::new(*ln, format!("signal {name} defined twice")));
        }
        vertices.push(Vertex { kind: VertexKind::Input, fanin: vec![], function: None, name: Some(name.clone()) });
    }
    let kept: Vec<usize> = (0..blocks.len()).filter(|&k| alias(k).is_none()).collect();
    for (i, &k) in kept.iter().enumerate() {
        id_of.insert(blocks[k].output.clone(), inputs.len() + i);
    }
    let signal = |name: &str, line: usize, what: &str| -> Result<Signal, ParseError> {
        let (src, neg) = resolve(name, line)?;
        let id = *id_of.get(&src).ok_or_else(|| ParseError::new(line, format!("undefined {what}{src}")))?;
        Ok(Signal::new(id, neg))
    };
    let mut gate_line = HashMap::new();
    for &k in &kept {
        let b = &blocks[k];
        let fanin = b.inputs.iter().map(|s| signal(s, b.line, "signal ")).collect::<Result<Vec<_>, _>>()?;
        gate_line.insert(vertices.len(), b.line);
        vertices.push(Vertex {
            kind: VertexKind::Gate,
            fanin,
            function: Some(GateFunction::Table(tables[k].clone())),
            name: Some(b.output.clone()),
        });
    }
    for (name, ln) in &outputs {
        let s = signal(name, *ln, "output signal ")?;
        vertices.push(Vertex { kind: VertexKind::Output, fanin: vec![s], function: None, name: Some(name.clone()) });
    }
    let mut net = LogicNetwork::from_vertices(vertices).map_err(|e| match e {
        NetworkError::Cycle(v) => ParseError::new(gate_line.get(&v).copied().unwrap_or(1), "cyclic definition"),
        other => ParseError::new(1, other.to_string()),
    })?;
    let k = net.max_fanin();
    net.set_lut_bound(Some(k));
    Ok(net)
}

fn block_table(b: &NamesBlock) -> Result<TruthTable, ParseError> {
    let n = b.inputs.len() as u32;
    if n > MAX_DENSE_VARS {
        return Err(ParseError::new(b.line, format!("LUT with {n} inputs exceeds {MAX_DENSE_VARS}")));
    }
    let vals: HashSet<char> = b.rows.iter().map(|r| r.1).collect();
    if vals.len() > 1 {
        return Err(ParseError::new(b.line, "cover mixes on-set and off-set rows"));
    }
    let mut t = TruthTable::zero(n);
    for (cube, _, _) in &b.rows {
        let care: Vec<(usize, bool)> =
            cube.chars().enumerate().filter(|(_, c)| *c != '-').map(|(i, c)| (i, c == '1')).collect();
        for r in 0..t.rows() {
            if care.iter().all(|&(i, v)| ((r >> i) & 1 == 1) == v) {
                t.set(r, true);
            }
        }
    }
    if vals.contains(&'0') {
        t = !t;
    }
    Ok(t)
}

fn signal_name(net: &LogicNetwork, v: VertexId) -> String {
    match net.name(v) {
        Some(n) if net.vertex(v).kind != VertexKind::Output => n.to_string(),
        _ => format!("n{v}"),
    }
}

fn write_table(out: &mut String, ins: &[String], name: &str, t: &TruthTable) {
    writeln!(out, ".names {}{}{}", ins.join(" "), if ins.is_empty() { "" } else { " " }, name).unwrap();
    for r in 0..t.rows() {
        if t.get(r) {
            let cube: String = (0..ins.len()).map(|i| if (r >> i) & 1 == 1 { '1' } else { '0' }).collect();
            if cube.is_empty() {
                writeln!(out, "1").unwrap();
            } else {
                writeln!(out, "{cube} 1").unwrap();
            }
        }
    }
}

/// Complemented arcs become explicit inverters; cone functions are written
/// node by node. A gate driving an output directly takes the output's name
/// when that name is otherwise unused.
pub fn write_blif(net: &LogicNetwork, model: &str) -> String {
    let mut out = String::new();
    writeln!(out, ".model {model}").unwrap();
    let outs: Vec<String> = net.outputs().iter().map(|&v| net.name(v).map(str::to_string).unwrap_or(format!("y{v}"))).collect();
    let mut names: Vec<String> = (0..net.len()).map(|v| signal_name(net, v)).collect();
    let taken: HashSet<String> = names.iter().cloned().collect();
    let fanout = net.fanout_counts();
    let mut renamed: HashSet<VertexId> = HashSet::new();
    // Gates read only by one complemented output are written complemented.
    let mut flipped: HashSet<VertexId> = HashSet::new();
    for (k, &y) in net.outputs().iter().enumerate() {
        let s = net.fanin(y)[0];
        if !net.is_gate(s.node) || taken.contains(&outs[k]) || renamed.contains(&s.node) {
            continue;
        }
        if s.neg && fanout[s.node] == 1 {
            flipped.insert(s.node);
        } else if s.neg {
            continue;
        }
        renamed.insert(s.node);
        names[s.node] = outs[k].clone();
    }
    let signal_name = |_: &LogicNetwork, v: VertexId| names[v].clone();
    let ins: Vec<String> = net.inputs().iter().map(|&v| signal_name(net, v)).collect();
    writeln!(out, ".inputs {}", ins.join(" ")).unwrap();
    writeln!(out, ".outputs {}", outs.join(" ")).unwrap();
    let mut inverted: HashSet<VertexId> = HashSet::new();
    let inv_name = |v: VertexId| format!("{}_n", signal_name(net, v));
    let need_inv = |s: &Signal, out: &mut String, inverted: &mut HashSet<VertexId>| -> String {
        if !s.neg {
            return signal_name(net, s.node);
        }
        if inverted.insert(s.node) {
            writeln!(out, ".names {} {}\n0 1", signal_name(net, s.node), inv_name(s.node)).unwrap();
        }
        inv_name(s.node)
    };
    for v in net.gates_topo() {
        let fanin: Vec<String> = net.fanin(v).iter().map(|s| need_inv(s, &mut out, &mut inverted)).collect();
        let name = signal_name(net, v);
        let flip;
        let mut f = net.function(v).unwrap();
        if flipped.contains(&v) {
            flip = f.complement();
            f = &flip;
        }
        match f {
            GateFunction::Table(t) => write_table(&mut out, &fanin, &name, t),
            GateFunction::Cone(c) => {
                let mut local: Vec<String> = fanin.clone();
                for (j, node) in c.nodes.iter().enumerate() {
                    let nm = format!("{name}_c{j}");
                    let mut t = node.func.clone();
                    let mut ins = Vec::new();
                    for (i, &(src, neg)) in node.fanin.iter().enumerate() {
                        ins.push(local[src].clone());
                        if neg {
                            t = flip_var(&t, i as u32);
                        }
                    }
                    write_table(&mut out, &ins, &nm, &t);
                    local.push(nm);
                }
                let (r, neg) = c.root;
                writeln!(out, ".names {} {}\n{} 1", local[r], name, if neg { '0' } else { '1' }).unwrap();
            }
        }
    }
    for (k, &y) in net.outputs().iter().enumerate() {
        let s = net.fanin(y)[0];
        let src = signal_name(net, s.node);
        if src == outs[k] && (!s.neg || flipped.contains(&s.node)) {
            continue;
        }
        writeln!(out, ".names {} {}\n{} 1", src, outs[k], if s.neg { '0' } else { '1' }).unwrap();
    }
    writeln!(out, ".end").unwrap();
    out
}

/// Table of `f` with input `i` complemented.
pub(crate) fn flip_var(t: &TruthTable, i: u32) -> TruthTable {
    TruthTable::from_fn(t.num_vars(), |r| t.get(r ^ (1 << i)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn and_or_gates() {
        let and = parse_blif(".model m\n.inputs a b\n.outputs y\n.names a b y\n11 1\n.end\n").unwrap();
        assert_eq!(and.output_tables()[0].to_hex(), "8");
        let or = parse_blif(".inputs a b\n.outputs y\n.names a b y\n1- 1\n-1 1\n").unwrap();
        assert_eq!(or.output_tables()[0].to_hex(), "e");
        assert_eq!(or.lut_bound(), Some(2));
    }

    #[test]
    fn comments_continuations_offset_covers() {
        let text = "# header\n.model m\n.inputs a \\\n b\n.outputs y z\n.names a b y # nand\n11 0\n.names z\n1\n.end\n";
        let n = parse_blif(text).unwrap();
        let t = n.output_tables();
        assert_eq!(t[0].to_hex(), "7");
        assert_eq!(t[1].to_hex(), "f");
    }

    #[test]
    fn errors() {
        let e = parse_blif(".inputs a\n.outputs y\n.latch a y\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_blif(".inputs a b\n.outputs y\n.names a b y\n1 1\n").unwrap_err();
        assert_eq!(e.line, 4);
        let e = parse_blif(".inputs a\n.outputs y\n.names a q y\n11 1\n").unwrap_err();
        assert!(e.msg.contains("undefined"), "{e}");
    }

    #[test]
    fn buffers_and_inverters_collapse() {
        let text = ".inputs a b\n.outputs y z\n.names a b g\n11 1\n.names g h\n0 1\n.names h y\n1 1\n.names a z\n0 1\n";
        let n = parse_blif(text).unwrap();
        assert_eq!(n.num_gates(), 1);
        assert_eq!(n.output_signal(n.outputs()[0]).unwrap(), Signal::new(2, true));
        assert_eq!(n.output_signal(n.outputs()[1]).unwrap(), Signal::new(0, true));
        assert_eq!(n.output_tables()[0].to_hex(), "7");
        let e = parse_blif(".inputs a\n.outputs y\n.names p q\n1 1\n.names q p\n1 1\n.names a p y\n11 1\n").unwrap_err();
        assert!(e.msg.contains("cyclic"), "{e}");
    }

    #[test]
    fn roundtrip_with_inverted_output() {
        let mut n = LogicNetwork::new();
        let a = n.add_input("a");
        let b = n.add_input("b");
        let g = n.add_gate(vec![Signal::pos(a), Signal::new(b, true)], GateFunction::Table(TruthTable::from_u64(2, 0b0110))).unwrap();
        n.add_output(Signal::new(g, true), "y").unwrap();
        n.add_output(Signal::pos(a), "a_copy").unwrap();
        let again = parse_blif(&write_blif(&n, "t")).unwrap();
        assert_eq!(again.output_tables(), n.output_tables());
    }
}
