//! Caterpillars: locked-path detection, decision, and shortest schedules.
//!
//! The decision peels off everything that can never move (sibling leaves that
//! both hold tokens, and locked paths), requires both configurations to agree
//! on it, and then checks that every remaining piece holds equally many blue
//! and red tokens.
//!
//! Schedules work on a column model of each remaining piece: column `c` is
//! spine vertex `c` together with its leaves. Tokens cannot pass each other,
//! so the i-th blue token from the left goes to the i-th red one. Each token
//! picks one trajectory from a small candidate set (its shortest route, with
//! optional one-edge excursions at the first and last spine vertex it
//! visits), and a chain DP picks the cheapest combination in which every pair
//! of neighbouring tokens can be interleaved without conflict.

use crate::error::SolveError;
use crate::graph::{Graph, IndependentSet, Move, ReconfigSequence, Vertex};
use crate::recognize::{recognize_caterpillar, CaterpillarStructure};
use crate::solver::{NoReason, NoWitness, Outcome};

/// Vertices covered by locked paths, and the paths themselves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LockMark {
    pub marked: Vec<bool>,
    pub paths: Vec<Vec<Vertex>>,
}

impl LockMark {
    pub fn marked_vertices(&self) -> Vec<Vertex> {
        (0..self.marked.len())
            .filter(|&i| self.marked[i])
            .map(Vertex::from_index)
            .collect()
    }
}

/// Left-to-right sweep over the spine that records every locked path of the
/// token set. `n` is the vertex count of the graph `cat` was built from.
pub fn mark_locked(cat: &CaterpillarStructure, n: usize, tokens: &[Vertex]) -> LockMark {
    let mut tok = vec![false; n];
    for v in tokens {
        tok[v.index()] = true;
    }
    let mut paths: Vec<Vec<Vertex>> = Vec::new();
    // Column where a candidate path starts: a token leaf under an empty
    // spine vertex.
    let mut open: Option<usize> = None;
    let mut prev_token = false;
    for (i, &s) in cat.spine.iter().enumerate() {
        let leaf_tokens: Vec<Vertex> = cat.leaves[i]
            .iter()
            .copied()
            .filter(|l| tok[l.index()])
            .collect();
        if tok[s.index()] {
            // An interior token must have degree two.
            if !cat.leaves[i].is_empty() {
                open = None;
            }
            prev_token = true;
            continue;
        }
        if !leaf_tokens.is_empty() {
            if let (Some(o), true) = (open, prev_token) {
                let start = *cat.leaves[o].iter().find(|l| tok[l.index()]).unwrap();
                let mut path = vec![start];
                path.extend(&cat.spine[o..=i]);
                path.push(leaf_tokens[0]);
                paths.push(path);
            }
            for &other in &leaf_tokens[1..] {
                paths.push(vec![leaf_tokens[0], s, other]);
            }
            open = Some(i);
        } else if !prev_token {
            open = None;
        }
        prev_token = false;
    }
    let mut marked = vec![false; n];
    for p in &paths {
        for v in p {
            marked[v.index()] = true;
        }
    }
    LockMark { marked, paths }
}

/// Direction of a token along the spine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DirectionTag {
    L,
    R,
    C,
}

/// One grid position of the column model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Pos {
    pub col: usize,
    pub leaf: bool,
}

impl Pos {
    fn spine(col: usize) -> Self {
        Pos { col, leaf: false }
    }

    fn leaf(col: usize) -> Self {
        Pos { col, leaf: true }
    }

    /// Scaled footprint: two tokens at positions `p` left of `q` are
    /// compatible iff `p.extent().1 <= q.extent().0`.
    fn extent(self) -> (i64, i64) {
        let c = 4 * self.col as i64;
        if self.leaf {
            (c - 1, c + 1)
        } else {
            (c - 3, c + 3)
        }
    }
}

/// A one-edge step away from the route and straight back.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Excursion {
    Leaf,
    LeftStep,
    RightStep,
}

/// Excursions chosen per token, as `(column, kind)` in travel order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DetourPlan {
    pub per_token: Vec<Vec<(usize, Excursion)>>,
}

#[derive(Clone, Debug)]
struct Trajectory {
    positions: Vec<Pos>,
    excursions: Vec<(usize, Excursion)>,
}

impl Trajectory {
    fn moves(&self) -> usize {
        self.positions.len() - 1
    }
}

/// A piece with no locked tokens, in its own local vertex ids.
#[derive(Clone, Debug)]
struct Piece {
    graph: Graph,
    cat: CaterpillarStructure,
    /// Local vertex `i + 1` is original vertex `ids[i]`.
    ids: Vec<Vertex>,
    blue: Vec<Vertex>,
    red: Vec<Vertex>,
}

/// Token endpoints in a piece, sorted left to right.
struct Token {
    from: Vertex,
    to: Vertex,
    start: Pos,
    end: Pos,
}

/// Maximum number of excursions inserted at each anchor.
const EXCURSIONS_PER_ANCHOR: usize = 1;

struct ColumnModel<'a> {
    cat: &'a CaterpillarStructure,
    column: Vec<usize>,
    is_leaf: Vec<bool>,
    rep_leaf: Vec<Option<Vertex>>,
}

impl<'a> ColumnModel<'a> {
    fn new(piece: &'a Piece) -> Self {
        let n = piece.graph.n();
        let (column, is_leaf) = piece.cat.columns(n);
        let mut carries = vec![false; n];
        for v in piece.blue.iter().chain(&piece.red) {
            carries[v.index()] = true;
        }
        let rep_leaf = piece
            .cat
            .leaves
            .iter()
            .map(|ls| {
                ls.iter()
                    .copied()
                    .find(|l| carries[l.index()])
                    .or(ls.first().copied())
            })
            .collect();
        ColumnModel {
            cat: &piece.cat,
            column,
            is_leaf,
            rep_leaf,
        }
    }

    fn m(&self) -> usize {
        self.cat.spine.len()
    }

    fn pos(&self, v: Vertex) -> Pos {
        Pos {
            col: self.column[v.index()],
            leaf: self.is_leaf[v.index()],
        }
    }

    fn tokens(&self, blue: &[Vertex], red: &[Vertex]) -> Vec<Token> {
        let mut b = blue.to_vec();
        let mut r = red.to_vec();
        b.sort_by_key(|&v| self.column[v.index()]);
        r.sort_by_key(|&v| self.column[v.index()]);
        b.into_iter()
            .zip(r)
            .map(|(from, to)| Token {
                from,
                to,
                start: self.pos(from),
                end: self.pos(to),
            })
            .collect()
    }

    /// Shortest walk in the column model. Sibling leaves of one column are
    /// two slides apart.
    fn route(&self, t: &Token) -> Vec<Pos> {
        if t.from == t.to {
            return vec![t.start];
        }
        let mut path = vec![t.start];
        if t.start.leaf {
            path.push(Pos::spine(t.start.col));
        }
        let mut c = t.start.col;
        while c != t.end.col {
            c = if t.end.col > c { c + 1 } else { c - 1 };
            path.push(Pos::spine(c));
        }
        if t.end.leaf {
            path.push(t.end);
        }
        path
    }

    fn excursion_options(&self, col: usize, route: &[Pos]) -> Vec<Option<Excursion>> {
        let mut out = vec![None];
        if self.rep_leaf[col].is_some() && !route.contains(&Pos::leaf(col)) {
            out.push(Some(Excursion::Leaf));
        }
        if col > 0 {
            out.push(Some(Excursion::LeftStep));
        }
        if col + 1 < self.m() {
            out.push(Some(Excursion::RightStep));
        }
        out
    }

    fn excursion_positions(col: usize, e: Excursion) -> [Pos; 2] {
        let away = match e {
            Excursion::Leaf => Pos::leaf(col),
            Excursion::LeftStep => Pos::spine(col - 1),
            Excursion::RightStep => Pos::spine(col + 1),
        };
        [away, Pos::spine(col)]
    }

    /// All sequences of up to `EXCURSIONS_PER_ANCHOR` excursions at `col`.
    fn excursion_sequences(&self, col: usize, route: &[Pos]) -> Vec<Vec<Excursion>> {
        let single: Vec<Excursion> = self
            .excursion_options(col, route)
            .into_iter()
            .flatten()
            .collect();
        let mut all = vec![Vec::new()];
        let mut frontier = vec![Vec::new()];
        for _ in 0..EXCURSIONS_PER_ANCHOR {
            let mut next = Vec::new();
            for seq in &frontier {
                for &e in &single {
                    let mut s: Vec<Excursion> = seq.clone();
                    s.push(e);
                    next.push(s);
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        all
    }

    fn candidates(&self, t: &Token) -> Vec<Trajectory> {
        let base = self.route(t);
        let spine_at: Vec<usize> = (0..base.len()).filter(|&i| !base[i].leaf).collect();
        let Some((&i0, &i1)) = spine_at.first().zip(spine_at.last()) else {
            return vec![Trajectory {
                positions: base,
                excursions: Vec::new(),
            }];
        };
        let (c0, c1) = (base[i0].col, base[i1].col);
        let first = self.excursion_sequences(c0, &base);
        let last = self.excursion_sequences(c1, &base);
        let mut out: Vec<Trajectory> = Vec::new();
        for x0 in &first {
            for x1 in &last {
                let mut positions = Vec::with_capacity(base.len() + 2 * (x0.len() + x1.len()));
                let mut excursions = Vec::new();
                for (i, &p) in base.iter().enumerate() {
                    positions.push(p);
                    if i == i0 {
                        for &e in x0 {
                            positions.extend(Self::excursion_positions(c0, e));
                            excursions.push((c0, e));
                        }
                    }
                    if i == i1 {
                        for &e in x1 {
                            positions.extend(Self::excursion_positions(c1, e));
                            excursions.push((c1, e));
                        }
                    }
                }
                if !out.iter().any(|o| o.positions == positions) {
                    out.push(Trajectory {
                        positions,
                        excursions,
                    });
                }
            }
        }
        out.sort_by_key(|t| t.positions.len());
        out
    }

    fn vertex_at(&self, p: Pos, t: &Token, index: usize, last: usize) -> Vertex {
        if !p.leaf {
            self.cat.spine[p.col]
        } else if index == 0 {
            t.from
        } else if index == last {
            t.to
        } else {
            self.rep_leaf[p.col].expect("excursion to a missing leaf")
        }
    }
}

/// Interleaving of two neighbouring tokens, `left` staying left of `right`.
/// Returns the step order (`false` advances `left`, `true` advances
/// `right`), or `None` if they cannot get past each other's way.
fn interleave(left: &[Pos], right: &[Pos]) -> Option<Vec<bool>> {
    let rho: Vec<i64> = left.iter().map(|p| p.extent().1).collect();
    let lam: Vec<i64> = right.iter().map(|p| p.extent().0).collect();
    let (a, b) = (rho.len(), lam.len());
    if rho.iter().max() <= lam.iter().min() {
        let mut steps = vec![false; a - 1];
        steps.resize(a + b - 2, true);
        return Some(steps);
    }
    if rho[0] > lam[0] || rho[a - 1] > lam[b - 1] {
        return None;
    }
    let mut reach = vec![false; a * b];
    for i in 0..a {
        for j in 0..b {
            if rho[i] > lam[j] {
                continue;
            }
            reach[i * b + j] = (i == 0 && j == 0)
                || (i > 0 && reach[(i - 1) * b + j])
                || (j > 0 && reach[i * b + j - 1]);
        }
    }
    if !reach[a * b - 1] {
        return None;
    }
    let mut steps = Vec::with_capacity(a + b - 2);
    let (mut i, mut j) = (a - 1, b - 1);
    while i > 0 || j > 0 {
        if i > 0 && reach[(i - 1) * b + j] {
            steps.push(false);
            i -= 1;
        } else {
            steps.push(true);
            j -= 1;
        }
    }
    steps.reverse();
    Some(steps)
}

/// Breaks a forest of caterpillars into pieces free of immovable tokens, or
/// finds the reason the instance is a "no".
fn reduce(g: &Graph, blue: &[Vertex], red: &[Vertex]) -> Result<Vec<Piece>, NoWitness> {
    let mut pieces = Vec::new();
    let ids: Vec<Vertex> = g.vertices().collect();
    let mut work = vec![(g.clone(), ids, blue.to_vec(), red.to_vec())];
    while let Some((h, ids, blue, red)) = work.pop() {
        let n = h.n();
        let mut color = vec![(false, false); n];
        for v in &blue {
            color[v.index()].0 = true;
        }
        for v in &red {
            color[v.index()].1 = true;
        }
        for comp in h.components().into_iter().rev() {
            let local_of = |set: &dyn Fn(Vertex) -> bool| -> Vec<Vertex> {
                comp.iter()
                    .enumerate()
                    .filter(|&(_, &v)| set(v))
                    .map(|(i, _)| Vertex::from_index(i))
                    .collect()
            };
            let cb = local_of(&|v| color[v.index()].0);
            let cr = local_of(&|v| color[v.index()].1);
            let orig = |vs: &[Vertex]| -> Vec<Vertex> {
                vs.iter().map(|v| ids[comp[v.index()].index()]).collect()
            };
            if cb.len() != cr.len() {
                let mut w = orig(&cb);
                w.extend(orig(&cr));
                w.sort_unstable();
                w.dedup();
                return Err(NoWitness::new(NoReason::ComponentUnbalanced, w));
            }
            if cb.is_empty() || cb == cr {
                continue;
            }
            let piece = h.induced(&comp);
            let piece_ids: Vec<Vertex> = comp.iter().map(|v| ids[v.index()]).collect();
            let cat = recognize_caterpillar(&piece).expect("connected subgraph of a caterpillar");
            let pn = piece.n();

            let mut remove = vec![false; pn];
            let mut tok_b = vec![false; pn];
            let mut tok_r = vec![false; pn];
            for v in &cb {
                tok_b[v.index()] = true;
            }
            for v in &cr {
                tok_r[v.index()] = true;
            }
            for (i, ls) in cat.leaves.iter().enumerate() {
                let lb: Vec<Vertex> = ls.iter().copied().filter(|l| tok_b[l.index()]).collect();
                let lr: Vec<Vertex> = ls.iter().copied().filter(|l| tok_r[l.index()]).collect();
                if lb.len() < 2 && lr.len() < 2 {
                    continue;
                }
                if lb != lr {
                    let mut w = vec![piece_ids[cat.spine[i].index()]];
                    w.extend(lb.iter().chain(&lr).map(|v| piece_ids[v.index()]));
                    w[1..].sort_unstable();
                    w.dedup();
                    return Err(NoWitness::new(NoReason::TwinLeavesBlocked, w));
                }
                remove[cat.spine[i].index()] = true;
                for l in ls {
                    remove[l.index()] = true;
                }
            }
            if !remove.iter().any(|&r| r) {
                let mb = mark_locked(&cat, pn, &cb);
                let mr = mark_locked(&cat, pn, &cr);
                let differs: Vec<Vertex> = (0..pn)
                    .filter(|&i| {
                        mb.marked[i] != mr.marked[i] || (mb.marked[i] && (tok_b[i] != tok_r[i]))
                    })
                    .map(|i| piece_ids[i])
                    .collect();
                if !differs.is_empty() {
                    return Err(NoWitness::new(NoReason::LockMismatch, differs));
                }
                remove = mb.marked;
            }
            if remove.iter().any(|&r| r) {
                let keep: Vec<Vertex> = (0..pn)
                    .filter(|&i| !remove[i])
                    .map(Vertex::from_index)
                    .collect();
                let mut local = vec![0u32; pn];
                for (i, v) in keep.iter().enumerate() {
                    local[v.index()] = i as u32 + 1;
                }
                let relabel = |vs: &[Vertex]| -> Vec<Vertex> {
                    vs.iter()
                        .filter(|v| !remove[v.index()])
                        .map(|v| Vertex::new(local[v.index()]))
                        .collect()
                };
                let rest = piece.induced(&keep);
                let rest_ids = keep.iter().map(|v| piece_ids[v.index()]).collect();
                work.push((rest, rest_ids, relabel(&cb), relabel(&cr)));
                continue;
            }
            pieces.push(Piece {
                graph: piece,
                cat,
                ids: piece_ids,
                blue: cb,
                red: cr,
            });
        }
    }
    pieces.sort_by_key(|p| p.ids[0]);
    Ok(pieces)
}

/// Every component must be a caterpillar.
fn check_forest(g: &Graph) -> Result<(), SolveError> {
    for comp in g.components() {
        recognize_caterpillar(&g.induced(&comp))?;
    }
    Ok(())
}

/// Decision only: `None` means reachable.
pub fn decide(
    g: &Graph,
    blue: &IndependentSet,
    red: &IndependentSet,
) -> Result<Option<NoWitness>, SolveError> {
    if blue.k() != red.k() {
        return Err(SolveError::CardinalityMismatch(blue.k(), red.k()));
    }
    check_forest(g)?;
    Ok(reduce(g, blue.vertices(), red.vertices()).err())
}

/// The left-to-right matching of blue to red tokens on a caterpillar without
/// locked tokens.
pub fn assign_targets(
    cat: &CaterpillarStructure,
    n: usize,
    blue: &[Vertex],
    red: &[Vertex],
) -> Vec<(Vertex, Vertex)> {
    let (column, _) = cat.columns(n);
    let mut b = blue.to_vec();
    let mut r = red.to_vec();
    b.sort_by_key(|v| column[v.index()]);
    r.sort_by_key(|v| column[v.index()]);
    b.into_iter().zip(r).collect()
}

pub fn directions(
    cat: &CaterpillarStructure,
    n: usize,
    targets: &[(Vertex, Vertex)],
) -> Vec<DirectionTag> {
    let (column, _) = cat.columns(n);
    targets
        .iter()
        .map(|(b, r)| match column[b.index()].cmp(&column[r.index()]) {
            std::cmp::Ordering::Less => DirectionTag::R,
            std::cmp::Ordering::Greater => DirectionTag::L,
            std::cmp::Ordering::Equal => DirectionTag::C,
        })
        .collect()
}

/// Shortest schedule for one piece, in local ids, with its detours.
fn schedule(piece: &Piece) -> (Vec<Move>, Vec<Vec<(usize, Excursion)>>) {
    let model = ColumnModel::new(piece);
    let tokens = model.tokens(&piece.blue, &piece.red);
    let k = tokens.len();
    let cands: Vec<Vec<Trajectory>> = tokens.iter().map(|t| model.candidates(t)).collect();

    let mut cost: Vec<Vec<Option<usize>>> = Vec::with_capacity(k);
    let mut back: Vec<Vec<usize>> = Vec::with_capacity(k);
    cost.push(cands[0].iter().map(|t| Some(t.moves())).collect());
    back.push(vec![0; cands[0].len()]);
    for j in 1..k {
        let mut prev: Vec<(usize, usize)> = cost[j - 1]
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.map(|c| (c, i)))
            .collect();
        prev.sort_unstable();
        let mut cj = Vec::with_capacity(cands[j].len());
        let mut bj = Vec::with_capacity(cands[j].len());
        for t in &cands[j] {
            let found = prev
                .iter()
                .find(|&&(_, p)| interleave(&cands[j - 1][p].positions, &t.positions).is_some());
            match found {
                Some(&(c, p)) => {
                    cj.push(Some(c + t.moves()));
                    bj.push(p);
                }
                None => {
                    cj.push(None);
                    bj.push(0);
                }
            }
        }
        cost.push(cj);
        back.push(bj);
    }
    let (_, mut at) = cost[k - 1]
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.map(|c| (c, i)))
        .min()
        .expect("a balanced piece without locked tokens always has a schedule");
    let mut chosen = vec![0; k];
    for j in (0..k).rev() {
        chosen[j] = at;
        at = back[j][at];
    }
    let trajs: Vec<&Trajectory> = (0..k).map(|j| &cands[j][chosen[j]]).collect();

    // need_right[j][a]: moves of token j+1 required before move a of token j;
    // need_left[j][a]: moves of token j-1 required before move a of token j.
    let mut need_right: Vec<Vec<usize>> = trajs.iter().map(|t| vec![0; t.moves()]).collect();
    let mut need_left: Vec<Vec<usize>> = need_right.clone();
    for j in 0..k.saturating_sub(1) {
        let steps =
            interleave(&trajs[j].positions, &trajs[j + 1].positions).expect("checked by the DP");
        let (mut a, mut b) = (0, 0);
        for s in steps {
            if s {
                need_left[j + 1][b] = a;
                b += 1;
            } else {
                need_right[j][a] = b;
                a += 1;
            }
        }
    }
    let verts: Vec<Vec<Vertex>> = trajs
        .iter()
        .zip(&tokens)
        .map(|(tr, t)| {
            let last = tr.positions.len() - 1;
            tr.positions
                .iter()
                .enumerate()
                .map(|(i, &p)| model.vertex_at(p, t, i, last))
                .collect()
        })
        .collect();

    let total: usize = trajs.iter().map(|t| t.moves()).sum();
    let mut done = vec![0usize; k];
    let mut moves = Vec::with_capacity(total);
    let mut queue: Vec<usize> = (0..k).rev().collect();
    let mut queued = vec![true; k];
    while let Some(j) = queue.pop() {
        queued[j] = false;
        let mut progressed = false;
        while done[j] < trajs[j].moves() {
            let a = done[j];
            let right_ok = j + 1 == k || done[j + 1] >= need_right[j][a];
            let left_ok = j == 0 || done[j - 1] >= need_left[j][a];
            if !(right_ok && left_ok) {
                break;
            }
            moves.push(Move::new(verts[j][a], verts[j][a + 1]));
            done[j] += 1;
            progressed = true;
        }
        if progressed {
            for nb in [j.wrapping_sub(1), j + 1] {
                if nb < k && !queued[nb] {
                    queued[nb] = true;
                    queue.push(nb);
                }
            }
        }
    }
    assert_eq!(
        moves.len(),
        total,
        "interleavings along the chain form a cycle"
    );
    let detours = trajs.iter().map(|t| t.excursions.clone()).collect();
    (moves, detours)
}

/// Solves a forest of caterpillars.
pub fn solve_caterpillar(
    g: &Graph,
    blue: &IndependentSet,
    red: &IndependentSet,
) -> Result<Outcome, SolveError> {
    Ok(match solve_with_plan(g, blue, red)? {
        Ok((seq, _)) => Outcome::Yes(seq),
        Err(w) => Outcome::No(w),
    })
}

/// Like [`solve_caterpillar`], also returning the detours taken.
pub fn solve_with_plan(
    g: &Graph,
    blue: &IndependentSet,
    red: &IndependentSet,
) -> Result<Result<(ReconfigSequence, DetourPlan), NoWitness>, SolveError> {
    if blue.k() != red.k() {
        return Err(SolveError::CardinalityMismatch(blue.k(), red.k()));
    }
    check_forest(g)?;
    let pieces = match reduce(g, blue.vertices(), red.vertices()) {
        Ok(p) => p,
        Err(w) => return Ok(Err(w)),
    };
    let mut seq = ReconfigSequence::empty(blue.clone());
    let mut plan = DetourPlan::default();
    for piece in &pieces {
        let (moves, detours) = schedule(piece);
        let map = |v: Vertex| piece.ids[v.index()];
        seq.moves
            .extend(moves.into_iter().map(|m| Move::new(map(m.from), map(m.to))));
        plan.per_token.extend(detours);
    }
    Ok(Ok((seq, plan)))
}
