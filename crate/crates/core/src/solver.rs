//! Exact cops-and-robbers solver.
//!
//! States are `(cop placement, robber vertex, side to move)`. Cops are
//! interchangeable, so a placement is a sorted multiset of vertices and is
//! stored by its rank in the combinatorial number system. The winning region
//! for the cops is the least fixed point of
//!
//! * captured states (robber on a cop) are won;
//! * a cops-to-move state is won if some joint cop move reaches a won state;
//! * a robber-to-move state is won if every robber move reaches a won state,
//!
//! computed by backward propagation from the captured states. Every
//! robber-to-move state keeps a counter of robber moves not yet known to
//! lose; cops-to-move states are won on the first witnessing successor. The
//! propagation runs in rounds (one per half-move), so the round in which a
//! state is won is its distance to capture under optimal play.

use std::sync::atomic::{AtomicU64, AtomicU8, Ordering};

use thiserror::Error;

use crate::graph::{girth_lower_bound, Graph, GraphError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Turn {
    CopsToMove,
    RobberToMove,
}

/// One position of the game. Cop positions are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GameState {
    pub cops: Vec<usize>,
    pub robber: usize,
    pub turn: Turn,
}

impl GameState {
    pub fn new(mut cops: Vec<usize>, robber: usize, turn: Turn) -> Self {
        cops.sort_unstable();
        GameState { cops, robber, turn }
    }

    pub fn is_captured(&self) -> bool {
        self.cops.binary_search(&self.robber).is_ok()
    }
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("at least one cop is required")]
    NoCops,
    #[error("state space of {0} states exceeds the 32-bit index range")]
    TooLarge(u128),
    #[error("solver needs about {needed} bytes, above the limit of {limit} bytes")]
    MemoryLimit { needed: u64, limit: u64 },
    #[error("vertex degree {0} is too large for the escape counters")]
    DegreeTooLarge(usize),
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub want_strategy: bool,
    /// Record per-state capture rounds; doubles memory.
    pub capture_time: bool,
    pub threads: usize,
    pub mem_limit: Option<u64>,
    /// Strategy tables are only built when `n * C(n+k-1, k)` is below this.
    pub strategy_threshold: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            want_strategy: false,
            capture_time: false,
            threads: 1,
            mem_limit: None,
            strategy_threshold: 10_000_000,
        }
    }
}

/// Sorted cop placements of `k` cops on `n` vertices, ranked in colex order
/// through the map `c_i -> c_i + i` onto strictly increasing sequences.
#[derive(Clone, Debug)]
pub struct ConfigSpace {
    n: usize,
    k: usize,
    binom: Vec<u64>,
    configs: Vec<u32>,
}

impl ConfigSpace {
    pub fn new(n: usize, k: usize) -> Self {
        let rows = n + k;
        let mut binom = vec![0u64; rows * (k + 1)];
        for a in 0..rows {
            binom[a * (k + 1)] = 1;
            for b in 1..=k.min(a) {
                let left = if b <= a - 1 { binom[(a - 1) * (k + 1) + b] } else { 0 };
                binom[a * (k + 1) + b] = left.saturating_add(binom[(a - 1) * (k + 1) + b - 1]);
            }
        }
        let mut space = ConfigSpace { n, k, binom, configs: Vec::new() };
        let count = space.count_u128();
        let mut configs = Vec::with_capacity(count as usize * k);
        let mut cur = vec![0u32; k];
        if n > 0 {
            loop {
                configs.extend_from_slice(&cur);
                // next sorted tuple in colex order: bump the lowest position
                // that can grow, reset everything below it to zero
                let mut i = 0;
                while i < k {
                    let limit = if i + 1 < k { cur[i + 1] } else { n as u32 - 1 };
                    if cur[i] < limit {
                        cur[i] += 1;
                        cur[..i].iter_mut().for_each(|c| *c = 0);
                        break;
                    }
                    i += 1;
                }
                if i == k {
                    break;
                }
            }
        }
        assert_eq!(configs.len() as u128, count * k as u128, "multiset enumeration count");
        space.configs = configs;
        space
    }

    fn count_u128(&self) -> u128 {
        binomial(self.n + self.k - 1, self.k)
    }

    pub fn count(&self) -> usize {
        self.configs.len() / self.k
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn config(&self, rank: usize) -> &[u32] {
        &self.configs[rank * self.k..(rank + 1) * self.k]
    }

    /// Rank of a sorted placement.
    #[inline]
    pub fn rank(&self, sorted: &[u32]) -> usize {
        let mut r = 0u64;
        for (i, &c) in sorted.iter().enumerate() {
            r += self.binom[(c as usize + i) * (self.k + 1) + i + 1];
        }
        r as usize
    }
}

/// Exact binomial coefficient (u128 is ample for the sizes we can solve).
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of game states for `k` cops on `n` vertices, both sides to move.
pub fn state_count(n: usize, k: usize) -> u128 {
    binomial(n + k - 1, k) * n as u128 * 2
}

/// Rough peak memory of a solve, in bytes.
pub fn memory_estimate(n: usize, k: usize, opts: &SolveOptions) -> u64 {
    let per_turn = binomial(n + k - 1, k) * n as u128;
    let mut bytes = per_turn / 4 // two won bitsets
        + per_turn // escape counters
        + per_turn * 4; // frontier queues, worst case
    if opts.capture_time || opts.want_strategy {
        bytes += per_turn * 4;
    }
    bytes.min(u64::MAX as u128) as u64
}

struct AtomicBits(Vec<AtomicU64>);

impl AtomicBits {
    fn new(len: usize) -> Self {
        AtomicBits((0..len.div_ceil(64)).map(|_| AtomicU64::new(0)).collect())
    }
    #[inline]
    fn get(&self, i: usize) -> bool {
        self.0[i / 64].load(Ordering::Relaxed) & (1 << (i % 64)) != 0
    }
    /// Sets bit `i`, returning whether it was clear before.
    #[inline]
    fn set(&self, i: usize) -> bool {
        let mask = 1 << (i % 64);
        self.0[i / 64].fetch_or(mask, Ordering::Relaxed) & mask == 0
    }
}

/// Cop moves that realize a strategy step, stored by placement rank.
#[derive(Clone, Debug, Default)]
pub struct Strategy {
    /// `(placement, robber, next placement)` sorted by placement then robber.
    pub moves: Vec<(u32, u32, u32)>,
}

pub struct SolveResult {
    pub k: usize,
    pub copwin: bool,
    /// Set when `k > n` and the answer was given without solving.
    pub trivial: bool,
    /// A winning placement (lowest rank, or fastest when capture times are
    /// recorded).
    pub placement: Option<Vec<usize>>,
    /// Cop moves needed from `placement` against the best robber reply.
    pub capture_time: Option<u32>,
    pub states: u64,
    pub winning_states: u64,
    pub strategy: Option<Strategy>,
    space: Option<ConfigSpace>,
    won_cop: Option<AtomicBits>,
    won_rob: Option<AtomicBits>,
}

impl std::fmt::Debug for SolveResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SolveResult")
            .field("k", &self.k)
            .field("copwin", &self.copwin)
            .field("trivial", &self.trivial)
            .field("placement", &self.placement)
            .field("capture_time", &self.capture_time)
            .field("states", &self.states)
            .field("winning_states", &self.winning_states)
            .finish()
    }
}

impl SolveResult {
    /// Whether `state` lies in the cops' winning region.
    pub fn is_winning(&self, state: &GameState) -> bool {
        if self.trivial {
            return true;
        }
        let space = self.space.as_ref().expect("solved result keeps its tables");
        let cops: Vec<u32> = state.cops.iter().map(|&c| c as u32).collect();
        let idx = space.rank(&cops) * space.n() + state.robber;
        match state.turn {
            Turn::CopsToMove => self.won_cop.as_ref().unwrap().get(idx),
            Turn::RobberToMove => self.won_rob.as_ref().unwrap().get(idx),
        }
    }

    pub fn config_space(&self) -> Option<&ConfigSpace> {
        self.space.as_ref()
    }

    /// Strategy lines `S <cops> <robber> -> <cops'>`, sorted.
    pub fn strategy_lines(&self) -> Vec<String> {
        let (Some(strategy), Some(space)) = (&self.strategy, &self.space) else {
            return Vec::new();
        };
        let join = |c: &[u32]| c.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
        let mut lines: Vec<String> = strategy
            .moves
            .iter()
            .map(|&(c, r, nc)| {
                format!("S {} {} -> {}", join(space.config(c as usize)), r, join(space.config(nc as usize)))
            })
            .collect();
        lines.sort();
        lines
    }
}

/// Calls `f` with every sorted placement reachable from `cops` in one joint
/// move (each cop moves to a vertex of its closed neighborhood). The same
/// placement may be reported more than once.
fn for_each_joint_move(g: &Graph, cops: &[u32], scratch: &mut [u32], sorted: &mut [u32], mut f: impl FnMut(&[u32])) {
    let k = cops.len();
    let mut idx = vec![0usize; k];
    loop {
        for i in 0..k {
            let c = cops[i] as usize;
            scratch[i] = if idx[i] == 0 { c as u32 } else { g.neighbors(c)[idx[i] - 1] as u32 };
        }
        sorted.copy_from_slice(scratch);
        sorted.sort_unstable();
        f(sorted);
        let mut i = 0;
        while i < k {
            idx[i] += 1;
            if idx[i] <= g.degree(cops[i] as usize) {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if i == k {
            return;
        }
    }
}

/// Decides whether `k` cops can force a capture on `g`.
pub fn is_k_copwin(g: &Graph, k: usize, opts: &SolveOptions) -> Result<SolveResult, SolveError> {
    g.require_connected()?;
    if k == 0 {
        return Err(SolveError::NoCops);
    }
    let n = g.n();
    if k > n {
        return Ok(SolveResult {
            k,
            copwin: true,
            trivial: true,
            placement: Some((0..n).collect()),
            capture_time: Some(0),
            states: 0,
            winning_states: 0,
            strategy: None,
            space: None,
            won_cop: None,
            won_rob: None,
        });
    }
    if g.max_degree() >= u8::MAX as usize {
        return Err(SolveError::DegreeTooLarge(g.max_degree()));
    }
    let per_turn = binomial(n + k - 1, k) * n as u128;
    if per_turn > u32::MAX as u128 {
        return Err(SolveError::TooLarge(per_turn * 2));
    }
    if let Some(limit) = opts.mem_limit {
        let needed = memory_estimate(n, k, opts);
        if needed > limit {
            return Err(SolveError::MemoryLimit { needed, limit });
        }
    }

    let space = ConfigSpace::new(n, k);
    let nc = space.count();
    let total = nc * n;
    debug_assert_eq!(2 * total as u128, state_count(n, k));
    let won_cop = AtomicBits::new(total);
    let won_rob = AtomicBits::new(total);
    let escapes: Vec<AtomicU8> = (0..total).map(|i| AtomicU8::new(g.degree(i % n) as u8 + 1)).collect();
    let track_levels = opts.capture_time || opts.want_strategy;
    let mut level_cop: Vec<u16> = if track_levels { vec![u16::MAX; total] } else { Vec::new() };
    let mut level_rob: Vec<u16> = if track_levels { vec![u16::MAX; total] } else { Vec::new() };

    let mut frontier_cop = Vec::new();
    let mut frontier_rob = Vec::new();
    for c in 0..nc {
        let cfg = space.config(c);
        for (i, &p) in cfg.iter().enumerate() {
            if i > 0 && cfg[i - 1] == p {
                continue;
            }
            let s = c * n + p as usize;
            won_cop.set(s);
            won_rob.set(s);
            frontier_cop.push(s as u32);
            frontier_rob.push(s as u32);
        }
    }
    if track_levels {
        for &s in &frontier_cop {
            level_cop[s as usize] = 0;
            level_rob[s as usize] = 0;
        }
    }

    let pool =
        if opts.threads > 1 { rayon::ThreadPoolBuilder::new().num_threads(opts.threads).build().ok() } else { None };

    // A cops-to-move state just won: robber moves into it are no longer
    // escapes for the robber-to-move predecessors.
    let expand_cop = |chunk: &[u32]| -> Vec<u32> {
        let mut out = Vec::new();
        for &s in chunk {
            let s = s as usize;
            let (c, r) = (s / n, s % n);
            for &rp in std::iter::once(&r).chain(g.neighbors(r)) {
                let t = c * n + rp;
                if won_rob.get(t) {
                    continue;
                }
                if escapes[t].fetch_sub(1, Ordering::Relaxed) == 1 && won_rob.set(t) {
                    out.push(t as u32);
                }
            }
        }
        out
    };
    // A robber-to-move state just won: every placement that can move into
    // it wins with the robber where he is.
    let expand_rob = |chunk: &[u32]| -> Vec<u32> {
        let mut out = Vec::new();
        let mut scratch = vec![0u32; k];
        let mut sorted = vec![0u32; k];
        for &s in chunk {
            let s = s as usize;
            let (c, r) = (s / n, s % n);
            for_each_joint_move(g, space.config(c), &mut scratch, &mut sorted, |pred| {
                let t = space.rank(pred) * n + r;
                if won_cop.set(t) {
                    out.push(t as u32);
                }
            });
        }
        out
    };
    let run = |frontier: &[u32], f: &(dyn Fn(&[u32]) -> Vec<u32> + Sync)| -> Vec<u32> {
        let mut next = match &pool {
            Some(pool) => pool.install(|| {
                use rayon::prelude::*;
                frontier.par_chunks(1 << 14).map(f).flatten_iter().collect::<Vec<u32>>()
            }),
            None => f(frontier),
        };
        next.sort_unstable();
        next
    };

    let mut round: u16 = 0;
    let mut winning = frontier_cop.len() as u64 + frontier_rob.len() as u64;
    while !frontier_cop.is_empty() || !frontier_rob.is_empty() {
        round = round.checked_add(1).expect("capture rounds fit in u16");
        let next_rob = run(&frontier_cop, &expand_cop);
        let next_cop = run(&frontier_rob, &expand_rob);
        if track_levels {
            next_rob.iter().for_each(|&s| level_rob[s as usize] = round);
            next_cop.iter().for_each(|&s| level_cop[s as usize] = round);
        }
        winning += next_rob.len() as u64 + next_cop.len() as u64;
        log::info!("round {round}: {} cop-to-move and {} robber-to-move states won", next_cop.len(), next_rob.len());
        frontier_cop = next_cop;
        frontier_rob = next_rob;
    }
    drop(escapes);

    // cops place first, then the robber picks any vertex
    let winning_placements = (0..nc).filter(|&c| (0..n).all(|r| won_cop.get(c * n + r)));
    let (placement, capture_time) = if track_levels {
        let best = winning_placements
            .map(|c| (c, (0..n).map(|r| level_cop[c * n + r]).max().unwrap_or(0)))
            .min_by_key(|&(c, lvl)| (lvl, c));
        match best {
            Some((c, lvl)) => (Some(c), Some((lvl as u32).div_ceil(2))),
            None => (None, None),
        }
    } else {
        (winning_placements.min(), None)
    };

    let strategy = if opts.want_strategy && (total as u64) < opts.strategy_threshold {
        Some(extract_strategy(g, &space, &won_cop, &won_rob, &level_cop, &level_rob))
    } else {
        None
    };

    Ok(SolveResult {
        k,
        copwin: placement.is_some(),
        trivial: false,
        placement: placement.map(|c| space.config(c).iter().map(|&v| v as usize).collect()),
        capture_time,
        states: 2 * total as u64,
        winning_states: winning,
        strategy,
        space: Some(space),
        won_cop: Some(won_cop),
        won_rob: Some(won_rob),
    })
}

/// For every won, uncaptured cops-to-move state, the lowest-rank joint move
/// into a robber-to-move state won strictly earlier.
fn extract_strategy(
    g: &Graph,
    space: &ConfigSpace,
    won_cop: &AtomicBits,
    won_rob: &AtomicBits,
    level_cop: &[u16],
    level_rob: &[u16],
) -> Strategy {
    let n = space.n();
    let k = space.k();
    let mut scratch = vec![0u32; k];
    let mut sorted = vec![0u32; k];
    let mut moves = Vec::new();
    for c in 0..space.count() {
        let cfg = space.config(c);
        for r in 0..n {
            let s = c * n + r;
            if !won_cop.get(s) || cfg.contains(&(r as u32)) {
                continue;
            }
            let mut best: Option<usize> = None;
            for_each_joint_move(g, cfg, &mut scratch, &mut sorted, |next| {
                let nc = space.rank(next);
                let t = nc * n + r;
                if won_rob.get(t) && level_rob[t] < level_cop[s] && best.map_or(true, |b| nc < b) {
                    best = Some(nc);
                }
            });
            let nc = best.expect("won state has a witnessing move");
            moves.push((c as u32, r as u32, nc as u32));
        }
    }
    Strategy { moves }
}

/// Outcome of a cop-number search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CopNumber {
    /// `None` means larger than `k_max`.
    pub value: Option<usize>,
    pub k_max: usize,
    /// The girth/minimum-degree lower bound.
    pub lower_bound: usize,
}

impl CopNumber {
    pub fn matches_lower_bound(&self) -> bool {
        self.value == Some(self.lower_bound)
    }
}

impl std::fmt::Display for CopNumber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.value {
            Some(c) => write!(f, "{c}"),
            None => write!(f, "> {}", self.k_max),
        }
    }
}

/// Smallest `k <= k_max` for which `k` cops win.
pub fn cop_number(g: &Graph, k_max: usize, opts: &SolveOptions) -> Result<CopNumber, SolveError> {
    let lower_bound = girth_lower_bound(g)?;
    let mut value = None;
    for k in 1..=k_max {
        if is_k_copwin(g, k, opts)?.copwin {
            value = Some(k);
            break;
        }
    }
    if let Some(c) = value {
        assert!(lower_bound <= c, "girth bound {lower_bound} exceeds solved cop number {c}");
    } else {
        assert!(lower_bound > 0);
    }
    Ok(CopNumber { value, k_max, lower_bound })
}

/// Checks that subdividing every edge into `l` edges raises the cop number
/// by at most one and never lowers it.
pub fn verify_subdivision_lemma(g: &Graph, l: usize, k_max: usize, opts: &SolveOptions) -> Result<bool, SolveError> {
    let base = cop_number(g, k_max, opts)?.value;
    let sub = cop_number(&crate::graph::subdivide(g, l)?, k_max, opts)?.value;
    Ok(match (base, sub) {
        (Some(c), Some(s)) => s == c || s == c + 1,
        _ => false,
    })
}

/// Checks that clique substitution does not decrease the cop number.
pub fn verify_clique_lemma(g: &Graph, k_max: usize, opts: &SolveOptions) -> Result<bool, SolveError> {
    let base = cop_number(g, k_max, opts)?.value;
    let knots = crate::graph::clique_substitute(g);
    let sub = cop_number(&knots, k_max, opts)?.value;
    Ok(match (base, sub) {
        (Some(c), Some(s)) => s >= c,
        (Some(_), None) => true,
        _ => false,
    })
}
