//! Brute-force Cayley balls: ground truth for lengths and generations.

use super::{Framing, NormalFormB3, NormalFormHq, Word};
use crate::error::{Error, Result};
use std::collections::HashMap;

pub const DEFAULT_MAX_RADIUS: u32 = 12;

/// Canonical element key per framing family.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Element {
    Hq(NormalFormHq),
    Free(Vec<i32>),
    B3(NormalFormB3),
}

impl Element {
    fn identity(framing: Framing) -> Result<Element> {
        Ok(match framing {
            Framing::Hecke { q } => Element::Hq(NormalFormHq::identity(q)),
            Framing::ModularSigma { .. } | Framing::ModularST => {
                Element::Hq(NormalFormHq::identity(3))
            }
            Framing::FreeIdempotent { .. } | Framing::FreeSymmetric { .. } => {
                Element::Free(Vec::new())
            }
            Framing::BraidSigma { .. } | Framing::BraidTilde => {
                Element::B3(NormalFormB3::identity())
            }
        })
    }

    fn step(&self, framing: Framing, letter: i32) -> Result<Element> {
        Ok(match self {
            Element::Hq(nf) => {
                let mut nf = nf.clone();
                for ab in framing.ab_spelling(letter)? {
                    nf.push(ab);
                }
                Element::Hq(nf)
            }
            Element::Free(w) => {
                let mut w = w.clone();
                let cancels = match framing {
                    Framing::FreeIdempotent { .. } => w.last() == Some(&letter.abs()),
                    _ => w.last() == Some(&-letter),
                };
                if cancels {
                    w.pop();
                } else {
                    w.push(if framing.is_idempotent_letter(letter) {
                        letter.abs()
                    } else {
                        letter
                    });
                }
                Element::Free(w)
            }
            Element::B3(nf) => {
                // one-letter multiply via the word machinery; balls are small
                let mut proj = nf.projection.clone();
                for ab in framing.ab_spelling(letter)? {
                    proj.push(ab);
                }
                let single = Word::new(framing, vec![letter])?;
                let e1 = super::exponent_sum(&single)?;
                let e_sec_old = nf.projection.section_exponent_sum();
                let e_sec_new = proj.section_exponent_sum();
                // e(w.l) = e(w) + e(l); f = (e - e_section)/6
                let e_old = 6 * nf.center_exponent + e_sec_old;
                let num = e_old + e1 - e_sec_new;
                debug_assert!(num % 6 == 0);
                Element::B3(NormalFormB3 {
                    projection: proj,
                    center_exponent: num / 6,
                })
            }
        })
    }
}

/// BFS ball of a framing: vertices, generator-labelled edges and distances.
pub struct CayleyBall {
    pub framing: Framing,
    pub radius: u32,
    pub vertices: Vec<Element>,
    /// `(src, dst, letter)` with both endpoints inside the ball.
    pub edges: Vec<(usize, usize, i32)>,
    pub distance: Vec<u32>,
    index: HashMap<Element, usize>,
}

impl CayleyBall {
    pub fn index_of(&self, el: &Element) -> Option<usize> {
        self.index.get(el).copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Graph distance of a reduced word/element, if inside the ball.
    pub fn distance_of(&self, el: &Element) -> Option<u32> {
        self.index_of(el).map(|i| self.distance[i])
    }

    /// Edge list as `src,dst,generator` CSV lines.
    pub fn edges_csv(&self) -> String {
        let mut out = String::from("src,dst,generator\n");
        for &(s, d, g) in &self.edges {
            out.push_str(&format!("{s},{d},{g}\n"));
        }
        out
    }
}

fn vertex_budget() -> usize {
    // HYPWALK_MAX_MEM caps ball/lattice memory; ~96 bytes per vertex estimate
    match std::env::var("HYPWALK_MAX_MEM") {
        Ok(v) => parse_mem_bytes(&v).map(|b| (b / 96).max(1) as usize).unwrap_or(usize::MAX),
        Err(_) => usize::MAX,
    }
}

pub(crate) fn parse_mem_bytes(s: &str) -> Option<u64> {
    let s = s.trim();
    let (num, mult) = match s.chars().last()? {
        'k' | 'K' => (&s[..s.len() - 1], 1u64 << 10),
        'm' | 'M' => (&s[..s.len() - 1], 1u64 << 20),
        'g' | 'G' => (&s[..s.len() - 1], 1u64 << 30),
        _ => (s, 1),
    };
    num.trim().parse::<u64>().ok().map(|n| n * mult)
}

/// Breadth-first ball of the given radius in the word metric of the framing.
pub fn cayley_ball(framing: Framing, radius: u32) -> Result<CayleyBall> {
    if radius > DEFAULT_MAX_RADIUS {
        return Err(Error::ResourceLimit(format!(
            "radius {radius} exceeds maximum {DEFAULT_MAX_RADIUS}"
        )));
    }
    let budget = vertex_budget();
    let moves = framing.moves();
    let root = Element::identity(framing)?;
    let mut vertices = vec![root.clone()];
    let mut index = HashMap::new();
    index.insert(root, 0usize);
    let mut distance = vec![0u32];
    let mut edges = Vec::new();
    let mut frontier = vec![0usize];
    for d in 1..=radius {
        let mut next = Vec::new();
        for &vi in &frontier {
            let v = vertices[vi].clone();
            for &mv in &moves {
                let w = v.step(framing, mv)?;
                let wi = match index.get(&w) {
                    Some(&i) => i,
                    None => {
                        let i = vertices.len();
                        if i >= budget {
                            return Err(Error::ResourceLimit(
                                "HYPWALK_MAX_MEM vertex budget exhausted".into(),
                            ));
                        }
                        vertices.push(w.clone());
                        index.insert(w, i);
                        distance.push(d);
                        next.push(i);
                        i
                    }
                };
                edges.push((vi, wi, mv));
            }
        }
        frontier = next;
    }
    // boundary edges out of the last shell are dropped unless both ends lie
    // inside; add the closing edges among the outermost shell
    for &vi in &frontier {
        let v = vertices[vi].clone();
        for &mv in &moves {
            let w = v.step(framing, mv)?;
            if let Some(&wi) = index.get(&w) {
                edges.push((vi, wi, mv));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Ok(CayleyBall {
        framing,
        radius,
        vertices,
        edges,
        distance,
        index,
    })
}

/// Independent count of H_q normal forms of irreducible length <= r
/// (syllable enumeration, no graph search).
pub fn hq_ball_size_by_enumeration(q: u32, r: u32) -> u64 {
    // DP over (remaining budget, last syllable kind)
    // kinds: 0 = start, 1 = ends with a, 2 = ends with b
    fn count(q: u64, budget: i64, last: u8, memo: &mut HashMap<(i64, u8), u64>) -> u64 {
        if let Some(&v) = memo.get(&(budget, last)) {
            return v;
        }
        let mut total = 1; // the form ending here
        // append an a-syllable
        if last != 1 && budget >= 1 {
            total += count(q, budget - 1, 1, memo);
        }
        // append b^e, cost min(e, q-e)
        if last != 2 {
            for e in 1..q {
                let cost = e.min(q - e) as i64;
                if budget >= cost {
                    total += count(q, budget - cost, 2, memo) ;
                }
            }
        }
        memo.insert((budget, last), total);
        total
    }
    let mut memo = HashMap::new();
    count(q as u64, r as i64, 0, &mut memo)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h3_radius_one() {
        let ball = cayley_ball(Framing::PSL2Z, 1).unwrap();
        // {e, a, b, b^-1}
        assert_eq!(ball.vertex_count(), 4);
    }

    #[test]
    fn h3_radius_two_matches_enumeration() {
        for r in 0..=4 {
            let ball = cayley_ball(Framing::PSL2Z, r).unwrap();
            assert_eq!(
                ball.vertex_count() as u64,
                hq_ball_size_by_enumeration(3, r),
                "radius {r}"
            );
        }
    }

    #[test]
    fn free_idempotent_tree_count() {
        // 3-regular tree: 1 + 3(2^r - 1)
        for r in 1..=6 {
            let ball = cayley_ball(Framing::FreeIdempotent { rank: 3 }, r).unwrap();
            assert_eq!(ball.vertex_count() as u64, 1 + 3 * ((1 << r) - 1));
        }
    }

    #[test]
    fn radius_cap() {
        assert!(matches!(
            cayley_ball(Framing::PSL2Z, 13),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn lengths_agree_with_bfs_distance_h3_h4() {
        for q in [3u32, 4] {
            let ball = cayley_ball(Framing::Hecke { q }, 6).unwrap();
            for (i, el) in ball.vertices.iter().enumerate() {
                if let Element::Hq(nf) = el {
                    assert_eq!(
                        nf.irreducible_length(),
                        ball.distance[i] as u64,
                        "q={q} element {nf}"
                    );
                }
            }
        }
    }

    #[test]
    fn graph_distance_vs_generation_levels() {
        // elements at generation k sit at distance 2k-1, 2k or 2k+1 on H3
        let ball = cayley_ball(Framing::PSL2Z, 7).unwrap();
        for (i, el) in ball.vertices.iter().enumerate() {
            if let Element::Hq(nf) = el {
                let k = nf.backbone_generation() as i64;
                let d = ball.distance[i] as i64;
                assert!((d - 2 * k).abs() <= 1, "d={d} k={k} {nf}");
            }
        }
    }
}
