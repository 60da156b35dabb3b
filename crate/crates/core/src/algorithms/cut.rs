use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::graph::CutInstance;
use crate::problems::{Alphabet, Assignment};
use crate::rng::SeededRng;

#[derive(Clone, Debug, PartialEq)]
pub struct FlipCutOutcome {
    pub assignment: Assignment,
    pub cut: usize,
    /// Cut value before the first pass and after every pass.
    pub cut_history: Vec<usize>,
    pub flips: usize,
    /// True when the last pass found no improving flip.
    pub converged: bool,
}

/// Single-spin-flip local search for (hyper)graph MAXCUT.
///
/// Each pass visits the nodes in a fresh random order and flips any spin
/// whose flip strictly increases the cut. Stops after a pass with no flip
/// or after `max_rounds` passes.
pub fn local_flip_cut<C: CutInstance + ?Sized>(
    instance: &C,
    start: &Assignment,
    max_rounds: usize,
    rng: &mut SeededRng,
) -> Result<FlipCutOutcome> {
    let h = instance.as_hypergraph();
    if start.len() != h.n() {
        return Err(Error::LengthMismatch {
            expected: h.n(),
            got: start.len(),
        });
    }
    if start.alphabet() != Alphabet::Spin {
        return Err(Error::Alphabet { expected: "{-1,+1}" });
    }
    let mut sigma = start.clone();
    let mut product: Vec<i8> = h
        .edges()
        .iter()
        .map(|e| e.iter().map(|&u| sigma.get(u)).product())
        .collect();
    let mut cut = product.iter().filter(|&&p| p < 0).count();
    let mut history = vec![cut];
    let mut order: Vec<usize> = (0..h.n()).collect();
    let mut flips = 0;
    let mut converged = false;
    for _ in 0..max_rounds {
        order.shuffle(rng);
        let mut improved = false;
        for &u in &order {
            // flipping u toggles every incident product: uncut -> cut is +1
            let gain: i64 = h
                .incident(u)
                .iter()
                .map(|&e| if product[e] > 0 { 1 } else { -1 })
                .sum();
            if gain > 0 {
                sigma.flip(u);
                for &e in h.incident(u) {
                    product[e] = -product[e];
                }
                cut = (cut as i64 + gain) as usize;
                flips += 1;
                improved = true;
            }
        }
        history.push(cut);
        if !improved {
            converged = true;
            break;
        }
    }
    Ok(FlipCutOutcome {
        assignment: sigma,
        cut,
        cut_history: history,
        flips,
        converged,
    })
}

/// Uniformly random spins.
pub fn random_spins(n: usize, rng: &mut SeededRng) -> Assignment {
    use rand::Rng;
    let values = (0..n).map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect();
    Assignment::spins(values).expect("values are +-1")
}
