//! Low-order coefficient tables for eyeball comparison.

use std::fmt::Write;

use num_traits::Zero;

use magicineq::forms::FormRegistry;

const ORDER: usize = 12;

pub fn golden_tables() -> String {
    let s = FormRegistry::new(ORDER).sequences();
    let mut out = String::new();
    out.push_str("f = sum a_n pi^2 q^n\n");
    for (n, a) in s.a.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
        writeln!(out, "  q^{n}\t{a}").unwrap();
    }
    out.push_str("\ng = sum b_n q^n\n");
    for (n, b) in s.b.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
        writeln!(out, "  q^{n}\t{b}").unwrap();
    }
    out.push_str("\nf~ = sum c_n(z) q^n\n");
    for (n, c) in s.c.iter().enumerate().take(ORDER).filter(|(_, c)| !c.is_zero()) {
        writeln!(out, "  q^{n}\t{}", c.display_z()).unwrap();
    }
    out.push_str("\ng~ = sum d_n q^n\n");
    for (n, d) in s.d.iter().enumerate() {
        writeln!(out, "  q^{n}\t{d}").unwrap();
    }
    out
}
