//! Benchmark netlists shared by the integration tests.
#![allow(dead_code)]

use revsynth::logic::{AigBuilder, GateFunction, LogicNetwork, Signal, VertexId};
use revsynth::tt::TruthTable;

pub fn full_adder() -> LogicNetwork {
    let mut b = AigBuilder::new();
    let (a, x, c) = (b.input("a"), b.input("b"), b.input("cin"));
    let (s, co) = add_bit(&mut b, a, x, c);
    b.output(s, "s");
    b.output(co, "cout");
    b.finish()
}

fn add_bit(b: &mut AigBuilder, a: Signal, x: Signal, c: Signal) -> (Signal, Signal) {
    let t = b.xor(a, x);
    let s = b.xor(t, c);
    let g = b.and(a, x);
    let p = b.and(t, c);
    let co = b.or(g, p);
    (s, co)
}

/// `n`-bit ripple-carry adder with carry-in: 2n+1 inputs, n+1 outputs.
pub fn ripple_adder(n: usize) -> LogicNetwork {
    let mut b = AigBuilder::new();
    let a: Vec<Signal> = (0..n).map(|i| b.input(&format!("a{i}"))).collect();
    let x: Vec<Signal> = (0..n).map(|i| b.input(&format!("b{i}"))).collect();
    let mut c = b.input("cin");
    for i in 0..n {
        let (s, co) = add_bit(&mut b, a[i], x[i], c);
        b.output(s, &format!("s{i}"));
        c = co;
    }
    b.output(c, "cout");
    b.finish()
}

/// `n`-bit unsigned comparator with outputs `lt`, `eq`, `gt`.
pub fn comparator(n: usize) -> LogicNetwork {
    let mut b = AigBuilder::new();
    let a: Vec<Signal> = (0..n).map(|i| b.input(&format!("a{i}"))).collect();
    let x: Vec<Signal> = (0..n).map(|i| b.input(&format!("b{i}"))).collect();
    let mut lt = b.constant(false);
    let mut eq = b.constant(true);
    for i in (0..n).rev() {
        let bit_lt = b.and(!a[i], x[i]);
        let bit_eq = !b.xor(a[i], x[i]);
        let here = b.and(eq, bit_lt);
        lt = b.or(lt, here);
        eq = b.and(eq, bit_eq);
    }
    let le = b.or(lt, eq);
    b.output(lt, "lt");
    b.output(eq, "eq");
    b.output(!le, "gt");
    b.finish()
}

/// 1 iff at least four of six inputs are 1, built as a population count.
pub fn majority6() -> LogicNetwork {
    let mut b = AigBuilder::new();
    let x: Vec<Signal> = (0..6).map(|i| b.input(&format!("x{i}"))).collect();
    // Two full adders compress each triple to (sum, carry).
    let (s0, c0) = add_bit(&mut b, x[0], x[1], x[2]);
    let (s1, c1) = add_bit(&mut b, x[3], x[4], x[5]);
    // count = (s0 + s1) + 2 (c0 + c1); count >= 4 iff c0 c1, or exactly one
    // carry together with s0 s1.
    let both_c = b.and(c0, c1);
    let one_c = b.xor(c0, c1);
    let both_s = b.and(s0, s1);
    let mid = b.and(one_c, both_s);
    let y = b.or(both_c, mid);
    b.output(y, "maj");
    b.finish()
}

pub struct Fixture {
    pub net: LogicNetwork,
    /// LUT vertices 1..=5 in the numbering of the example.
    pub luts: [VertexId; 5],
}

fn lut(net: &mut LogicNetwork, fanin: &[VertexId], bits: u64) -> VertexId {
    let t = TruthTable::from_u64(fanin.len() as u32, bits);
    net.add_gate(fanin.iter().map(|&v| Signal::pos(v)).collect(), GateFunction::Table(t)).unwrap()
}

/// Five-input, five-LUT example: LUT1 = f(x2, x3), LUT2 = f(x4, x5),
/// LUT3 = f(x1, LUT1) drives y1, LUT4 = f(LUT1, LUT2), LUT5 = f(LUT4, x5)
/// drives y2.
pub fn five_lut_example() -> Fixture {
    let mut n = LogicNetwork::new();
    let x: Vec<VertexId> = (1..=5).map(|i| n.add_input(format!("x{i}"))).collect();
    let l1 = lut(&mut n, &[x[1], x[2]], 0x8);
    let l2 = lut(&mut n, &[x[3], x[4]], 0x6);
    let l3 = lut(&mut n, &[x[0], l1], 0xe);
    let l4 = lut(&mut n, &[l1, l2], 0x8);
    let l5 = lut(&mut n, &[l4, x[4]], 0x6);
    n.add_output(Signal::pos(l3), "y1").unwrap();
    n.add_output(Signal::pos(l5), "y2").unwrap();
    n.set_lut_bound(Some(2));
    Fixture { net: n, luts: [l1, l2, l3, l4, l5] }
}

/// Named corpus used by the end-to-end checks.
pub fn corpus() -> Vec<(&'static str, LogicNetwork)> {
    vec![
        ("full_adder", full_adder()),
        ("ripple_adder4", ripple_adder(4)),
        ("comparator4", comparator(4)),
        ("majority6", majority6()),
    ]
}
