use super::path::DigitalPath;
use super::section::{SectionPart, TcWitness};
use crate::error::{Error, Result};
use crate::grid::{is_simple_closed_curve, DigitalImage};

/// Points of a simple closed curve in cyclic order, starting at index 0
/// and heading to its smaller neighbour.
pub fn cyclic_order(x: &DigitalImage) -> Result<Vec<usize>> {
    if !is_simple_closed_curve(x) {
        return Err(Error::InvalidWitness("not a simple closed curve".into()));
    }
    let mut order = vec![0, x.neighbors_of(0)[0]];
    while order.len() < x.len() {
        let (prev, cur) = (order[order.len() - 2], order[order.len() - 1]);
        let next = *x.neighbors_of(cur).iter().find(|&&n| n != prev).unwrap();
        order.push(next);
    }
    Ok(order)
}

/// Two-part rule on a simple closed curve of `m` points. Write `d` for the
/// number of forward steps from `x` to `y`. Pairs with `d < m/2` travel
/// forward, the others backward; within each part nearby pairs have
/// nearby `d` and the paths stay in step.
pub fn curve_witness(x: &DigitalImage) -> Result<TcWitness> {
    let order = cyclic_order(x)?;
    let m = order.len();
    let mut pos = vec![0; m];
    for (k, &p) in order.iter().enumerate() {
        pos[p] = k;
    }
    let half = m / 2;
    let mut fwd = SectionPart {
        members: Vec::new(),
        rules: Vec::new(),
    };
    let mut back = SectionPart {
        members: Vec::new(),
        rules: Vec::new(),
    };
    for a in 0..m {
        for b in 0..m {
            let d = (pos[b] + m - pos[a]) % m;
            if d < half {
                let p = (0..=d).map(|t| order[(pos[a] + t) % m]).collect();
                fwd.members.push(vec![a, b]);
                fwd.rules.push(DigitalPath::unchecked(p));
            } else {
                let p = (0..=m - d).map(|t| order[(pos[a] + m - t) % m]).collect();
                back.members.push(vec![a, b]);
                back.rules.push(DigitalPath::unchecked(p));
            }
        }
    }
    Ok(TcWitness {
        parts: vec![fwd, back],
    })
}
