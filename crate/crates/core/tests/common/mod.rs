#![allow(dead_code)]

pub mod oracle;

use mayss_core::{Element, GenKind, Generator, PrimeContext};
use proptest::prelude::*;

pub fn ctx(p: u64) -> PrimeContext {
    PrimeContext::new(p).unwrap()
}

/// Every generator with `i + j ≤ bound` (and `i ≥ 1` for `h`, `b`).
pub fn small_generators(bound: u32) -> Vec<Generator> {
    let mut out = Vec::new();
    for i in 0..=bound {
        out.push(Generator::a(i));
    }
    for i in 1..=bound {
        for j in 0..=bound - i {
            out.push(Generator::h(i, j).unwrap());
            out.push(Generator::b(i, j).unwrap());
        }
    }
    out
}

pub fn filtration(g: &Generator) -> u32 {
    if g.kind() == GenKind::B {
        2
    } else {
        1
    }
}

/// Product of the chosen generators, skipping picks that would exceed `max_filt`.
pub fn product(picks: &[usize], gens: &[Generator], max_filt: u32, ctx: &PrimeContext) -> Element {
    let mut x = Element::one();
    let mut f = 0;
    for &k in picks {
        let g = gens[k % gens.len()];
        if f + filtration(&g) > max_filt {
            continue;
        }
        f += filtration(&g);
        x = x.mul(&Element::generator(g, ctx), ctx);
    }
    x
}

pub fn picks(max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..1000, 0..=max_len)
}
