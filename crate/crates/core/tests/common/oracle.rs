//! Reference bases built without the library's enumerator or canonicalizer.
//!
//! `basis(s, t)` is the set of products `g · m` with `m` in `basis(s - filt g,
//! t - deg g)`, dropping exterior squares. Degrees, ordering and rendering
//! are re-derived here from the generator formulas.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;

/// `(kind rank, i, j)` with `a < h < b`.
pub type Gen = (u8, u32, u32);
/// Sorted `(generator, exponent)` list.
pub type Mono = Vec<(Gen, u32)>;

pub struct Oracle {
    pub p: u128,
    gens: Vec<(Gen, u128, u32, u32)>, // generator, degree, filtration, weight
    memo: HashMap<(u32, u128), Rc<BTreeSet<Mono>>>,
}

impl Oracle {
    pub fn new(p: u32, t_max: u128) -> Self {
        let p = u128::from(p);
        let mut gens = Vec::new();
        let mut i = 0u32;
        while 2 * p.pow(i) - 1 <= t_max {
            gens.push(((0, i, 0), 2 * p.pow(i) - 1, 1, 2 * i + 1));
            i += 1;
        }
        let mut i = 1u32;
        while 2 * (p.pow(i) - 1) <= t_max {
            let mut j = 0u32;
            while 2 * (p.pow(i) - 1) * p.pow(j) <= t_max {
                gens.push(((1, i, j), 2 * (p.pow(i) - 1) * p.pow(j), 1, 2 * i - 1));
                let db = 2 * (p.pow(i) - 1) * p.pow(j + 1);
                if db <= t_max {
                    gens.push(((2, i, j), db, 2, (2 * i - 1) * p as u32));
                }
                j += 1;
            }
            i += 1;
        }
        Oracle {
            p,
            gens,
            memo: HashMap::new(),
        }
    }

    pub fn basis(&mut self, s: u32, t: u128) -> Rc<BTreeSet<Mono>> {
        if let Some(b) = self.memo.get(&(s, t)) {
            return b.clone();
        }
        let mut out = BTreeSet::new();
        if s == 0 {
            if t == 0 {
                out.insert(Vec::new());
            }
        } else {
            for k in 0..self.gens.len() {
                let (g, d, f, _) = self.gens[k];
                if f > s || d > t {
                    continue;
                }
                let rest = self.basis(s - f, t - d);
                for m in rest.iter() {
                    if let Some(x) = insert(m, g) {
                        out.insert(x);
                    }
                }
            }
        }
        let out = Rc::new(out);
        self.memo.insert((s, t), out.clone());
        out
    }

    pub fn weight(&self, m: &Mono) -> u32 {
        let w: BTreeMap<Gen, u32> = self.gens.iter().map(|(g, _, _, w)| (*g, *w)).collect();
        m.iter().map(|(g, e)| w[g] * e).sum()
    }

    /// Rendered strings of `basis(s, t)`, optionally of one weight, sorted.
    pub fn rendered(&mut self, s: u32, t: u128, u: Option<u32>) -> Vec<String> {
        let b = self.basis(s, t);
        let mut v: Vec<String> = b
            .iter()
            .filter(|m| u.is_none_or(|u| self.weight(m) == u))
            .map(render)
            .collect();
        v.sort();
        v
    }
}

/// `g · m`, or `None` for an exterior square.
fn insert(m: &Mono, g: Gen) -> Option<Mono> {
    let mut x = m.clone();
    match x.binary_search_by(|(h, _)| h.cmp(&g)) {
        Ok(_) if g.0 == 1 => None,
        Ok(k) => {
            x[k].1 += 1;
            Some(x)
        }
        Err(k) => {
            x.insert(k, (g, 1));
            Some(x)
        }
    }
}

pub fn render(m: &Mono) -> String {
    if m.is_empty() {
        return "1".into();
    }
    m.iter()
        .map(|((kind, i, j), e)| {
            let g = match kind {
                0 => format!("a({i})"),
                1 => format!("h({i},{j})"),
                _ => format!("b({i},{j})"),
            };
            if *e == 1 {
                g
            } else {
                format!("{g}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}
