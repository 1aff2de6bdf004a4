//! E2 dimensions and class-level queries.
//!
//! d1 maps `(s, t, u)` to `(s+1, t, u-1)`, so every computation splits into
//! blocks of fixed May weight. An [`Engine`] memoizes bases per `(s, t)` and
//! can persist bases and d1 blocks through a [`BasisStore`].

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigUint;
use serde::Serialize;

use crate::algebra::{Element, Homogeneity, Monomial};
use crate::differential::{d1, d1_matrix};
use crate::enumerate::{enumerate_basis, BidegreeBasis, EnumConfig, PruneFlags};
use crate::error::{Error, Result};
use crate::exec::map_ordered;
use crate::grading::{PrimeContext, Tridegree};
use crate::linalg::MatrixFp;

/// Identifies a stored basis or d1 block.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisKey {
    pub p: u32,
    pub s: u32,
    pub t: BigUint,
    /// `None` for the basis of all weights.
    pub u: Option<u32>,
    pub prune: PruneFlags,
}

/// Persistent storage for bases and d1 blocks.
///
/// Implementations must be safe to share between threads; a failed load is
/// treated as a miss and a failed save is ignored.
pub trait BasisStore: Send + Sync {
    fn load_basis(&self, key: &BasisKey, ctx: &PrimeContext) -> Option<Vec<Monomial>>;
    fn save_basis(&self, key: &BasisKey, monomials: &[Monomial]);
    /// The d1 block whose domain is `key`.
    fn load_matrix(&self, key: &BasisKey) -> Option<MatrixFp>;
    fn save_matrix(&self, key: &BasisKey, matrix: &MatrixFp);
}

/// Dimensions of one weight block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightBlock {
    pub u: u32,
    pub e1_dim: usize,
    pub cycle_dim: usize,
    pub boundary_dim: usize,
    pub e2_dim: usize,
}

/// Bases and d1 matrices behind one weight block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockWitness {
    pub u: u32,
    #[serde(serialize_with = "crate::serde_util::display_seq")]
    pub basis: Vec<Monomial>,
    /// d1 out of the block, into `(s+1, t, u-1)`.
    pub d1_out: MatrixFp,
    /// d1 into the block, from `(s-1, t, u+1)`.
    pub d1_in: MatrixFp,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PageQueryResult {
    pub p: u32,
    pub s: u32,
    #[serde(serialize_with = "crate::serde_util::biguint_str")]
    pub t: BigUint,
    pub u: Option<u32>,
    pub e1_dim: usize,
    pub cycle_dim: usize,
    pub boundary_dim: usize,
    pub e2_dim: usize,
    pub blocks: Vec<WeightBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<BlockWitness>>,
}

/// d1-level status of a homogeneous element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurvivalVerdict {
    /// `None` for the zero element.
    pub tridegree: Option<Tridegree>,
    pub is_cycle: bool,
    pub is_boundary: bool,
    pub e2_nonzero: bool,
}

/// E2 total of a potential `d_r` source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SourceCheck {
    pub r: u32,
    pub source_u: u32,
    pub e1_dim: usize,
    pub e2_dim: usize,
}

/// Whether a class at `(s, t, u)` can be hit by some `d_r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HitReport {
    pub tridegree: Tridegree,
    pub source_s: Option<u32>,
    /// `(weight, count)` over the E1 basis of `(s-1, t, *)`, ascending by weight.
    pub source_weights: Vec<(u32, usize)>,
    /// Number of source monomials of weight `u + 1`.
    pub d1_source_count: usize,
    pub d1_boundary: bool,
    pub higher: Vec<SourceCheck>,
    pub not_hit_by_d1: bool,
    pub not_hit_at_higher_pages: bool,
    pub notes: Vec<String>,
}

/// Memoizing front end over enumeration, d1 and linear algebra.
pub struct Engine {
    ctx: PrimeContext,
    config: EnumConfig,
    store: Option<Arc<dyn BasisStore>>,
    retain_witness: bool,
    memo: Mutex<HashMap<(u32, BigUint), Arc<BidegreeBasis>>>,
}

impl Engine {
    pub fn new(ctx: PrimeContext, config: EnumConfig) -> Self {
        Engine {
            ctx,
            config,
            store: None,
            retain_witness: false,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_store(mut self, store: Arc<dyn BasisStore>) -> Self {
        self.store = Some(store);
        self
    }

    /// Keep bases and matrices in [`PageQueryResult::witness`].
    pub fn with_witness(mut self, retain: bool) -> Self {
        self.retain_witness = retain;
        self
    }

    pub fn ctx(&self) -> &PrimeContext {
        &self.ctx
    }

    pub fn config(&self) -> &EnumConfig {
        &self.config
    }

    fn key(&self, s: u32, t: &BigUint, u: Option<u32>) -> BasisKey {
        BasisKey {
            p: self.ctx.p(),
            s,
            t: t.clone(),
            u,
            prune: self.config.prune,
        }
    }

    fn all_weights(&self, s: u32, t: &BigUint) -> Result<Arc<BidegreeBasis>> {
        let memo_key = (s, t.clone());
        if let Some(b) = self.memo.lock().expect("memo lock").get(&memo_key) {
            return Ok(b.clone());
        }
        // computed outside the lock: enumeration may itself fan out
        let key = self.key(s, t, None);
        let stored = self.store.as_ref().and_then(|st| st.load_basis(&key, &self.ctx));
        let basis = match stored {
            Some(monomials) => BidegreeBasis {
                p: self.ctx.p(),
                s,
                t: t.clone(),
                u: None,
                monomials,
                universe_bound: crate::enumerate::universe_bound(&self.ctx, s, t),
            },
            None => {
                let b = enumerate_basis(&self.ctx, s, t, None, &self.config)?;
                log::debug!("enumerated ({s}, {t}): {} monomials", b.len());
                if let Some(st) = &self.store {
                    st.save_basis(&key, &b.monomials);
                }
                b
            }
        };
        let basis = Arc::new(basis);
        self.memo
            .lock()
            .expect("memo lock")
            .entry(memo_key)
            .or_insert(basis.clone());
        Ok(basis)
    }

    /// Basis of `(s, t, u)`, or of all weights when `u` is `None`.
    pub fn basis(&self, s: u32, t: &BigUint, u: Option<u32>) -> Result<Arc<BidegreeBasis>> {
        let all = self.all_weights(s, t)?;
        Ok(match u {
            None => all,
            Some(u) => Arc::new(all.restrict_weight(u)),
        })
    }

    fn block_monomials(&self, s: u32, t: &BigUint, u: u32) -> Result<Vec<Monomial>> {
        Ok(self.basis(s, t, Some(u))?.monomials.clone())
    }

    pub fn e1_dimension(&self, s: u32, t: &BigUint, u: Option<u32>) -> Result<usize> {
        Ok(self.basis(s, t, u)?.len())
    }

    /// Matrix of d1 from `(s, t, u)` to `(s+1, t, u-1)` in the enumerated bases.
    pub fn d1_block(&self, s: u32, t: &BigUint, u: u32) -> Result<MatrixFp> {
        let key = self.key(s, t, Some(u));
        let domain = self.block_monomials(s, t, u)?;
        let codomain = match u.checked_sub(1) {
            Some(w) => self.block_monomials(s + 1, t, w)?,
            None => Vec::new(),
        };
        if let Some(m) = self.store.as_ref().and_then(|st| st.load_matrix(&key)) {
            if m.rows() == codomain.len() && m.cols() == domain.len() && m.modulus() == self.ctx.p() {
                return Ok(m);
            }
        }
        let m = d1_matrix(&domain, &codomain, &self.ctx)?;
        if let Some(st) = &self.store {
            st.save_matrix(&key, &m);
        }
        Ok(m)
    }

    /// d1 into `(s, t, u)`, from `(s-1, t, u+1)`.
    fn d1_into(&self, s: u32, t: &BigUint, u: u32) -> Result<MatrixFp> {
        match s.checked_sub(1) {
            Some(src) => self.d1_block(src, t, u + 1),
            None => Ok(MatrixFp::zeros(self.ctx.p(), self.e1_dimension(s, t, Some(u))?, 0)),
        }
    }

    fn block(&self, s: u32, t: &BigUint, u: u32) -> Result<(WeightBlock, Option<BlockWitness>)> {
        let basis = self.block_monomials(s, t, u)?;
        let out = self.d1_block(s, t, u)?;
        let into = self.d1_into(s, t, u)?;
        let e1_dim = basis.len();
        let cycle_dim = e1_dim - out.rank();
        let boundary_dim = into.rank();
        let block = WeightBlock {
            u,
            e1_dim,
            cycle_dim,
            boundary_dim,
            e2_dim: cycle_dim - boundary_dim,
        };
        let witness = self.retain_witness.then_some(BlockWitness {
            u,
            basis,
            d1_out: out,
            d1_in: into,
        });
        Ok((block, witness))
    }

    /// E2 dimension of `(s, t, u)`; with `u` omitted, summed over the weights
    /// present in the E1 basis.
    pub fn e2_dimension(&self, s: u32, t: &BigUint, u: Option<u32>) -> Result<PageQueryResult> {
        let weights = match u {
            Some(u) => vec![u],
            None => self.basis(s, t, None)?.weights(),
        };
        let blocks: Vec<_> = map_ordered(self.config.exec, &weights, |&w| self.block(s, t, w))
            .into_iter()
            .collect::<Result<_>>()?;
        let (blocks, witnesses): (Vec<WeightBlock>, Vec<Option<BlockWitness>>) = blocks.into_iter().unzip();
        let sum = |f: fn(&WeightBlock) -> usize| blocks.iter().map(f).sum::<usize>();
        Ok(PageQueryResult {
            p: self.ctx.p(),
            s,
            t: t.clone(),
            u,
            e1_dim: sum(|b| b.e1_dim),
            cycle_dim: sum(|b| b.cycle_dim),
            boundary_dim: sum(|b| b.boundary_dim),
            e2_dim: sum(|b| b.e2_dim),
            witness: self.retain_witness.then(|| witnesses.into_iter().flatten().collect()),
            blocks,
        })
    }

    fn coordinates(&self, x: &Element, basis: &[Monomial]) -> Result<Vec<u32>> {
        let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(k, m)| (m, k)).collect();
        let mut v = vec![0u32; basis.len()];
        for (m, c) in x.terms() {
            let k = index
                .get(m)
                .ok_or_else(|| Error::ImageOutsideCodomain(m.to_string()))?;
            v[*k] = c;
        }
        Ok(v)
    }

    pub fn survives_to_e2(&self, x: &Element) -> Result<SurvivalVerdict> {
        let deg = match x.homogeneity() {
            Homogeneity::Inhomogeneous => return Err(Error::Inhomogeneous),
            Homogeneity::Zero => {
                return Ok(SurvivalVerdict {
                    tridegree: None,
                    is_cycle: true,
                    is_boundary: true,
                    e2_nonzero: false,
                })
            }
            Homogeneity::Homogeneous(d) => d,
        };
        let is_cycle = d1(x, &self.ctx).is_zero();
        let basis = self.block_monomials(deg.s, &deg.t, deg.u)?;
        let v = self.coordinates(x, &basis)?;
        let into = self.d1_into(deg.s, &deg.t, deg.u)?;
        let is_boundary = into.in_span(&v)?.is_some();
        Ok(SurvivalVerdict {
            tridegree: Some(deg),
            is_cycle,
            is_boundary,
            e2_nonzero: is_cycle && !is_boundary,
        })
    }

    /// Checks every possible source of a differential hitting `x`.
    ///
    /// A `d_r` with `r ≥ 2` hitting `x` needs a nonzero `E_r`, hence nonzero
    /// `E_2`, class at `(s-1, t, u+r)`. Whether `x` itself supports a nonzero
    /// higher differential is not decided here.
    pub fn higher_page_hit_analysis(&self, x: &Element) -> Result<HitReport> {
        let deg = match x.homogeneity() {
            Homogeneity::Homogeneous(d) => d,
            Homogeneity::Zero => return Err(Error::Precondition("the zero element has no tridegree".into())),
            Homogeneity::Inhomogeneous => return Err(Error::Inhomogeneous),
        };
        let verdict = self.survives_to_e2(x)?;
        let mut notes = vec![
            "permanence of the class (no nonzero differential out of it) is not asserted".to_string(),
        ];
        let Some(src) = deg.s.checked_sub(1) else {
            notes.push("filtration 0: there is no source bidegree".into());
            return Ok(HitReport {
                tridegree: deg,
                source_s: None,
                source_weights: Vec::new(),
                d1_source_count: 0,
                d1_boundary: verdict.is_boundary,
                higher: Vec::new(),
                not_hit_by_d1: !verdict.is_boundary,
                not_hit_at_higher_pages: true,
                notes,
            });
        };
        let source = self.basis(src, &deg.t, None)?;
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        for m in &source.monomials {
            *counts.entry(m.weight()).or_default() += 1;
        }
        let d1_source_count = counts.get(&(deg.u + 1)).copied().unwrap_or(0);
        let candidates: Vec<u32> = counts.keys().copied().filter(|w| *w >= deg.u + 2).collect();
        let higher: Vec<SourceCheck> = candidates
            .iter()
            .map(|&w| -> Result<SourceCheck> {
                let r = self.e2_dimension(src, &deg.t, Some(w))?;
                Ok(SourceCheck {
                    r: w - deg.u,
                    source_u: w,
                    e1_dim: r.e1_dim,
                    e2_dim: r.e2_dim,
                })
            })
            .collect::<Result<_>>()?;
        if source.is_empty() {
            notes.push("the source bidegree is empty: not hit at any page".into());
        } else if d1_source_count == 0 {
            notes.push(format!("no source monomial of weight {}: d1 cannot hit", deg.u + 1));
        }
        Ok(HitReport {
            tridegree: deg,
            source_s: Some(src),
            source_weights: counts.into_iter().collect(),
            d1_source_count,
            d1_boundary: verdict.is_boundary,
            not_hit_by_d1: !verdict.is_boundary,
            not_hit_at_higher_pages: higher.iter().all(|c| c.e2_dim == 0),
            higher,
            notes,
        })
    }
}

pub fn e1_dimension(ctx: &PrimeContext, s: u32, t: &BigUint, u: Option<u32>) -> Result<usize> {
    Engine::new(*ctx, EnumConfig::default()).e1_dimension(s, t, u)
}

pub fn e2_dimension(ctx: &PrimeContext, s: u32, t: &BigUint, u: Option<u32>) -> Result<PageQueryResult> {
    Engine::new(*ctx, EnumConfig::default()).e2_dimension(s, t, u)
}

pub fn survives_to_e2(x: &Element, ctx: &PrimeContext) -> Result<SurvivalVerdict> {
    Engine::new(*ctx, EnumConfig::default()).survives_to_e2(x)
}

pub fn higher_page_hit_analysis(x: &Element, ctx: &PrimeContext) -> Result<HitReport> {
    Engine::new(*ctx, EnumConfig::default()).higher_page_hit_analysis(x)
}
