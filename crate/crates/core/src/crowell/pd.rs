//! Planar diagram codes.
//!
//! Each crossing is `X a b c d`: the four arc labels met counter-clockwise,
//! starting with the incoming under-strand, so the under-strand runs `a -> c`.
//! See `docs/pd-format.md` for the file grammar.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdCode {
    pub crossings: Vec<[i64; 4]>,
    /// Explicit `from -> to` transitions; absent means each label is followed by the next.
    pub orient: Option<Vec<(i64, i64)>>,
}

/// `(crossing, position)` inside a PD code.
pub type Slot = (usize, usize);

/// A PD code whose over-strand directions have been resolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedPd {
    pub crossings: Vec<[i64; 4]>,
    /// Per crossing: `true` when the over-strand runs `b -> d`, `false` for `d -> b`.
    pub over_b_to_d: Vec<bool>,
    /// Arc labels in ascending order.
    pub arcs: Vec<i64>,
}

impl OrientedPd {
    /// Whether position `pos` (0..4) of crossing `c` is where its arc enters.
    pub fn enters(&self, c: usize, pos: usize) -> bool {
        match pos {
            0 => true,
            2 => false,
            1 => self.over_b_to_d[c],
            _ => !self.over_b_to_d[c],
        }
    }
}

impl PdCode {
    pub fn parse(text: &str) -> Result<Self> {
        let mut crossings = Vec::new();
        let mut orient: Option<Vec<(i64, i64)>> = None;
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut words = line.split_whitespace();
            let head = words.next().expect("nonempty line");
            match head {
                "X" => {
                    let vals: Vec<i64> = words
                        .map(|w| w.parse::<i64>().map_err(|_| Error::Pd(format!("line {}: bad label `{w}`", n + 1))))
                        .collect::<Result<_>>()?;
                    let arr: [i64; 4] = vals
                        .try_into()
                        .map_err(|_| Error::Pd(format!("line {}: a crossing needs four labels", n + 1)))?;
                    crossings.push(arr);
                }
                "orient" => {
                    let list = orient.get_or_insert_with(Vec::new);
                    for w in words {
                        let (a, b) = w
                            .split_once("->")
                            .ok_or_else(|| Error::Pd(format!("line {}: expected `a->b`, got `{w}`", n + 1)))?;
                        let parse = |s: &str| {
                            s.trim().parse::<i64>().map_err(|_| Error::Pd(format!("line {}: bad label `{s}`", n + 1)))
                        };
                        list.push((parse(a)?, parse(b)?));
                    }
                }
                other => return Err(Error::Pd(format!("line {}: unknown directive `{other}`", n + 1))),
            }
        }
        if crossings.is_empty() {
            return Err(Error::Pd("no crossings".into()));
        }
        Ok(PdCode { crossings, orient })
    }

    fn successor_map(&self, arcs: &[i64]) -> Result<HashMap<i64, i64>> {
        match &self.orient {
            None => {
                let n = arcs.len();
                Ok((0..n).map(|i| (arcs[i], arcs[(i + 1) % n])).collect())
            }
            Some(list) => {
                let mut m = HashMap::new();
                for &(a, b) in list {
                    if m.insert(a, b).is_some() {
                        return Err(Error::Pd(format!("arc {a} has two successors")));
                    }
                }
                if let Some(a) = arcs.iter().find(|a| !m.contains_key(a)) {
                    return Err(Error::Pd(format!("orientation does not give a successor for arc {a}")));
                }
                Ok(m)
            }
        }
    }

    pub fn orient(&self) -> Result<OrientedPd> {
        let mut count: BTreeMap<i64, usize> = BTreeMap::new();
        for c in &self.crossings {
            for &x in c {
                *count.entry(x).or_default() += 1;
            }
        }
        if let Some((x, k)) = count.iter().find(|(_, &k)| k != 2) {
            return Err(Error::Pd(format!("arc {x} appears {k} times, expected 2")));
        }
        let arcs: Vec<i64> = count.keys().copied().collect();
        let succ = self.successor_map(&arcs)?;

        // candidate over directions per crossing
        let mut options: Vec<Vec<bool>> = Vec::with_capacity(self.crossings.len());
        for (i, &[a, b, c, d]) in self.crossings.iter().enumerate() {
            if succ[&a] != c {
                return Err(Error::Pd(format!("crossing {}: under-strand {a} -> {c} contradicts the orientation", i + 1)));
            }
            let mut opts = Vec::new();
            if succ[&b] == d {
                opts.push(true);
            }
            if succ[&d] == b {
                opts.push(false);
            }
            if opts.is_empty() {
                return Err(Error::Pd(format!("crossing {}: over-strand {b}, {d} is not consecutive", i + 1)));
            }
            options.push(opts);
        }
        let ambiguous: Vec<usize> = (0..options.len()).filter(|&i| options[i].len() > 1).collect();
        if ambiguous.len() > 20 {
            return Err(Error::Pd("too many crossings with ambiguous over-strand direction".into()));
        }
        for mask in 0u64..(1u64 << ambiguous.len()) {
            let mut dirs: Vec<bool> = options.iter().map(|o| o[0]).collect();
            for (bit, &i) in ambiguous.iter().enumerate() {
                dirs[i] = mask & (1 << bit) == 0;
            }
            let o = OrientedPd { crossings: self.crossings.clone(), over_b_to_d: dirs, arcs: arcs.clone() };
            if o.heads_consistent() {
                o.check_single_component(&succ)?;
                return Ok(o);
            }
        }
        Err(Error::Pd("no consistent orientation: some arc would enter twice".into()))
    }
}

impl OrientedPd {
    fn heads_consistent(&self) -> bool {
        let mut heads: HashMap<i64, usize> = HashMap::new();
        for (c, cr) in self.crossings.iter().enumerate() {
            for (pos, &x) in cr.iter().enumerate() {
                if self.enters(c, pos) {
                    *heads.entry(x).or_default() += 1;
                }
            }
        }
        self.arcs.iter().all(|x| heads.get(x) == Some(&1))
    }

    fn check_single_component(&self, succ: &HashMap<i64, i64>) -> Result<()> {
        let start = self.arcs[0];
        let mut x = start;
        for steps in 1..=self.arcs.len() {
            x = succ[&x];
            if x == start {
                if steps == self.arcs.len() {
                    return Ok(());
                }
                break;
            }
        }
        Err(Error::Pd("diagram has more than one component; only knots are supported".into()))
    }

    /// Where each arc leaves and where it enters.
    pub fn arc_ends(&self) -> BTreeMap<i64, (Slot, Slot)> {
        let mut head = HashMap::new();
        let mut tail = HashMap::new();
        for (c, cr) in self.crossings.iter().enumerate() {
            for (pos, &x) in cr.iter().enumerate() {
                if self.enters(c, pos) {
                    head.insert(x, (c, pos));
                } else {
                    tail.insert(x, (c, pos));
                }
            }
        }
        self.arcs.iter().map(|&x| (x, (tail[&x], head[&x]))).collect()
    }
}
