//! Small named instances used by tests, benches, and documentation.
//!
//! * `T1`: golden mean shift on `{g0,g1}` with the injective map `g0:a g1:b`.
//! * `T2`: full shift on `{p,q}` with both symbols collapsed onto `z`.
//! * `T3`: 2-block presentation of the full 2-shift with the XOR labelling.

use crate::format::parse_triple;
use crate::triple::FactorTriple;

pub const T1_TEXT: &str = "xsymbols g0 g1\nedges g0>g0 g0>g1 g1>g0\nmap g0:a g1:b\n";
pub const T2_TEXT: &str = "xsymbols p q\nedges p>p p>q q>p q>q\nmap p:z q:z\n";
pub const T3_TEXT: &str = "xsymbols 00 01 10 11\n\
edges 00>00 00>01 01>10 01>11 10>00 10>01 11>10 11>11\n\
map 00:0 01:1 10:1 11:0\n";

pub fn t1() -> FactorTriple {
    parse_triple(T1_TEXT).expect("T1 parses")
}

pub fn t2() -> FactorTriple {
    parse_triple(T2_TEXT).expect("T2 parses")
}

pub fn t3() -> FactorTriple {
    parse_triple(T3_TEXT).expect("T3 parses")
}
