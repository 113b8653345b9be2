//! Sorting machines with one-time-use buffers.
//!
//! Input is read left to right. Each element either enters the machine (a
//! stack, or one of two parallel queues) or, if a fresh buffer slot is
//! available, goes into that slot. Output is emitted directly and has to come
//! out as `1, 2, …, n`; an element can leave the stack top, a queue front, or
//! a buffer slot only when it is the next value required. A slot holds at
//! most one element over the whole run.
//!
//! With two queues the sortable class is exactly `Av(321)+t` for the small
//! cases checked; with a stack it is a proper subclass of `Av(231)+t`, since
//! a buffer cannot take an entry that arrives after the entries it has to
//! let through (2341 with one buffer). See [`buffer_discrepancy`].
//!
//! Sortability is decided by depth-first search over configurations, with a
//! memo of configurations already known to fail. The memo key ignores which
//! slot holds what and which queue is which.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::perm::{Entry, Permutation};
use crate::sym;
use crate::{Error, Result};

pub const MAX_BUFFERS: usize = 3;
pub const MAX_SORT_LEN: usize = 10;
pub const MAX_CLASS_LEN: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MachineKind {
    Stack,
    TwoParallelQueues,
}

impl fmt::Display for MachineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MachineKind::Stack => "stack",
            MachineKind::TwoParallelQueues => "queues2",
        })
    }
}

/// A single machine step. Buffer slots are numbered from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    Push,
    Pop,
    Enq(u8),
    Deq(u8),
    BufIn(u8),
    BufOut(u8),
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Push => f.write_str("PUSH"),
            Move::Pop => f.write_str("POP"),
            Move::Enq(q) => write!(f, "ENQ{q}"),
            Move::Deq(q) => write!(f, "DEQ{q}"),
            Move::BufIn(k) => write!(f, "BUF_IN {k}"),
            Move::BufOut(k) => write!(f, "BUF_OUT {k}"),
        }
    }
}

impl Serialize for Move {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Slot {
    Fresh,
    Holding(Entry),
    Spent,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Config {
    next_input: usize,
    /// Stack bottom-to-top, or the two queues front-to-back.
    lanes: Vec<Vec<Entry>>,
    slots: Vec<Slot>,
    next_required: Entry,
}

impl Config {
    fn new(machine: MachineKind, buffers: usize) -> Self {
        let lanes = match machine {
            MachineKind::Stack => vec![Vec::new()],
            MachineKind::TwoParallelQueues => vec![Vec::new(), Vec::new()],
        };
        Self { next_input: 0, lanes, slots: vec![Slot::Fresh; buffers], next_required: 1 }
    }

    fn key(&self) -> Config {
        let mut k = self.clone();
        k.lanes.sort();
        k.slots.sort();
        k
    }
}

struct Search<'a> {
    input: &'a [Entry],
    machine: MachineKind,
    failed: HashSet<Config>,
    path: Vec<Move>,
}

impl Search<'_> {
    fn run(&mut self, cfg: &mut Config) -> bool {
        if cfg.next_required as usize > self.input.len() {
            return true;
        }
        let key = cfg.key();
        if self.failed.contains(&key) {
            return false;
        }
        for mv in self.moves(cfg) {
            let undo = cfg.clone();
            apply(self.input, cfg, mv).expect("generated moves are legal");
            self.path.push(mv);
            if self.run(cfg) {
                return true;
            }
            self.path.pop();
            *cfg = undo;
        }
        self.failed.insert(key);
        false
    }

    fn moves(&self, cfg: &Config) -> Vec<Move> {
        let mut out = Vec::new();
        let want = cfg.next_required;
        match self.machine {
            MachineKind::Stack => {
                if cfg.lanes[0].last() == Some(&want) {
                    out.push(Move::Pop);
                }
            }
            MachineKind::TwoParallelQueues => {
                for q in 0..2 {
                    if cfg.lanes[q].first() == Some(&want) {
                        out.push(Move::Deq(q as u8 + 1));
                    }
                }
            }
        }
        for (k, s) in cfg.slots.iter().enumerate() {
            if *s == Slot::Holding(want) {
                out.push(Move::BufOut(k as u8 + 1));
            }
        }
        if let Some(&x) = self.input.get(cfg.next_input) {
            // An element stuck behind a larger one can never come out in
            // order, so such placements are skipped.
            match self.machine {
                MachineKind::Stack => {
                    if cfg.lanes[0].last().is_none_or(|&top| top > x) {
                        out.push(Move::Push);
                    }
                }
                MachineKind::TwoParallelQueues => {
                    for q in 0..2 {
                        if cfg.lanes[q].last().is_none_or(|&back| back < x) {
                            out.push(Move::Enq(q as u8 + 1));
                        }
                    }
                }
            }
            if let Some(k) = cfg.slots.iter().position(|s| *s == Slot::Fresh) {
                out.push(Move::BufIn(k as u8 + 1));
            }
        }
        out
    }
}

fn apply(input: &[Entry], cfg: &mut Config, mv: Move) -> std::result::Result<(), String> {
    let want = cfg.next_required;
    let emit = |v: Option<Entry>| -> std::result::Result<(), String> {
        match v {
            Some(v) if v == want => Ok(()),
            Some(v) => Err(format!("{mv} emits {v}, expected {want}")),
            None => Err(format!("{mv} from an empty container")),
        }
    };
    match mv {
        Move::Push | Move::Enq(_) | Move::BufIn(_) => {
            let &x = input.get(cfg.next_input).ok_or_else(|| format!("{mv} with no input left"))?;
            match mv {
                Move::Push if cfg.lanes.len() == 1 => cfg.lanes[0].push(x),
                Move::Enq(q @ 1..=2) if cfg.lanes.len() == 2 => cfg.lanes[q as usize - 1].push(x),
                Move::BufIn(k) => {
                    let slot = cfg.slots.get_mut((k as usize).wrapping_sub(1)).ok_or_else(|| format!("no buffer {k}"))?;
                    if *slot != Slot::Fresh {
                        return Err(format!("buffer {k} already used"));
                    }
                    *slot = Slot::Holding(x);
                }
                _ => return Err(format!("{mv} does not fit this machine")),
            }
            cfg.next_input += 1;
        }
        Move::Pop if cfg.lanes.len() == 1 => {
            emit(cfg.lanes[0].last().copied())?;
            cfg.lanes[0].pop();
            cfg.next_required += 1;
        }
        Move::Deq(q @ 1..=2) if cfg.lanes.len() == 2 => {
            let lane = &mut cfg.lanes[q as usize - 1];
            emit(lane.first().copied())?;
            lane.remove(0);
            cfg.next_required += 1;
        }
        Move::BufOut(k) => {
            let slot = cfg.slots.get_mut((k as usize).wrapping_sub(1)).ok_or_else(|| format!("no buffer {k}"))?;
            match *slot {
                Slot::Holding(v) => emit(Some(v))?,
                _ => return Err(format!("buffer {k} is empty")),
            }
            *slot = Slot::Spent;
            cfg.next_required += 1;
        }
        _ => return Err(format!("{mv} does not fit this machine")),
    }
    Ok(())
}

fn guard(pi: &Permutation, buffers: usize) -> Result<()> {
    if buffers > MAX_BUFFERS {
        return Err(Error::CapExceeded { what: "buffers", value: buffers, cap: MAX_BUFFERS });
    }
    if pi.len() > MAX_SORT_LEN {
        return Err(Error::CapExceeded { what: "n", value: pi.len(), cap: MAX_SORT_LEN });
    }
    Ok(())
}

/// A move sequence that sorts `π`, if one exists.
pub fn sort_witness(pi: &Permutation, machine: MachineKind, buffers: usize) -> Result<Option<Vec<Move>>> {
    guard(pi, buffers)?;
    let mut search = Search { input: pi.values(), machine, failed: HashSet::new(), path: Vec::new() };
    let mut cfg = Config::new(machine, buffers);
    Ok(search.run(&mut cfg).then_some(search.path))
}

/// Whether `π` can be sorted by `machine` with `buffers` one-time-use buffers.
pub fn sortable(pi: &Permutation, machine: MachineKind, buffers: usize) -> Result<bool> {
    Ok(sort_witness(pi, machine, buffers)?.is_some())
}

/// Runs `moves` and returns the output produced, rejecting illegal moves and
/// moves that would emit out of order.
pub fn replay(pi: &Permutation, machine: MachineKind, buffers: usize, moves: &[Move]) -> std::result::Result<Vec<Entry>, String> {
    let mut cfg = Config::new(machine, buffers);
    let mut out = Vec::new();
    for &mv in moves {
        let before = cfg.next_required;
        apply(pi.values(), &mut cfg, mv)?;
        if cfg.next_required != before {
            out.push(before);
        }
    }
    Ok(out)
}

/// The permutations of length `n` the machine sorts.
pub fn sortable_permutations(machine: MachineKind, buffers: usize, n: usize) -> Result<Vec<Permutation>> {
    class_guard(buffers, n)?;
    Ok(sym::par_filter(n, |p| sortable(p, machine, buffers).expect("guarded")))
}

/// How many permutations of length `n` the machine sorts.
pub fn sortability_class(machine: MachineKind, buffers: usize, n: usize) -> Result<u64> {
    class_guard(buffers, n)?;
    Ok(sym::par_count(n, |p| sortable(p, machine, buffers).expect("guarded")))
}

/// The class the machine sorts without buffers: `Av(231)` for the stack,
/// `Av(321)` for two queues.
pub fn base_basis(machine: MachineKind) -> Permutation {
    match machine {
        MachineKind::Stack => Permutation::from_raw(vec![2, 3, 1]),
        MachineKind::TwoParallelQueues => Permutation::from_raw(vec![3, 2, 1]),
    }
}

/// Where the machine with `buffers` slots and `C+buffers` disagree on `S_n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub unsortable_members: Vec<Permutation>,
    pub sortable_non_members: Vec<Permutation>,
}

impl Discrepancy {
    pub fn is_empty(&self) -> bool {
        self.unsortable_members.is_empty() && self.sortable_non_members.is_empty()
    }
}

/// Compares sortability with membership in `C+buffers`, `C` the machine's
/// buffer-free class.
pub fn buffer_discrepancy(machine: MachineKind, buffers: usize, n: usize) -> Result<Discrepancy> {
    class_guard(buffers, n)?;
    let basis = [base_basis(machine)];
    let odd = sym::par_filter(n, |p| {
        sortable(p, machine, buffers).expect("guarded") != crate::perm::is_member_plus_t(p, &basis, buffers)
    });
    let (sortable_non_members, unsortable_members) =
        odd.into_iter().partition(|p| sortable(p, machine, buffers).expect("guarded"));
    Ok(Discrepancy { unsortable_members, sortable_non_members })
}

fn class_guard(buffers: usize, n: usize) -> Result<()> {
    if n > MAX_CLASS_LEN {
        return Err(Error::CapExceeded { what: "n", value: n, cap: MAX_CLASS_LEN });
    }
    if buffers > MAX_BUFFERS {
        return Err(Error::CapExceeded { what: "buffers", value: buffers, cap: MAX_BUFFERS });
    }
    Ok(())
}
