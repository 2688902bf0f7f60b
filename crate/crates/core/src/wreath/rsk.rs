use super::ColoredPermutation;
use crate::combinatorics::StandardTableau;
use crate::error::{Error, Result};

type Rows = Vec<Vec<Vec<u32>>>;

/// Row insertion of each letter `w(j)^{c_j}` into component `c_j`; the
/// recording tableau gets `j` in the new cell. Returns (insertion, recording).
pub fn rsk(w: &ColoredPermutation) -> (StandardTableau, StandardTableau) {
    let r = w.r() as usize;
    let mut ins: Rows = vec![Vec::new(); r];
    let mut rec: Rows = vec![Vec::new(); r];
    for j in 1..=w.n() {
        let comp = w.color(j) as usize;
        let mut x = w.image(j) as u32;
        let mut row = 0;
        loop {
            if row == ins[comp].len() {
                ins[comp].push(vec![x]);
                rec[comp].push(vec![j as u32]);
                break;
            }
            let line = &mut ins[comp][row];
            match line.iter().position(|&y| y > x) {
                Some(p) => {
                    x = std::mem::replace(&mut line[p], x);
                    row += 1;
                }
                None => {
                    line.push(x);
                    rec[comp][row].push(j as u32);
                    break;
                }
            }
        }
    }
    let s = StandardTableau::from_rows(&ins).expect("insertion tableau is standard");
    let t = StandardTableau::from_rows(&rec).expect("recording tableau is standard");
    (s, t)
}

pub fn rsk_inverse(insertion: &StandardTableau, recording: &StandardTableau) -> Result<ColoredPermutation> {
    if insertion.shape() != recording.shape() {
        return Err(Error::InvalidArgument(format!(
            "insertion shape {} differs from recording shape {}",
            insertion.shape(),
            recording.shape()
        )));
    }
    let n = insertion.size();
    let mut ins = insertion.rows();
    let mut images = vec![0; n];
    let mut colors = vec![0; n];
    for j in (1..=n).rev() {
        let cell = recording.cell(j);
        let comp = cell.component;
        let mut row = cell.row as usize - 1;
        let mut x = ins[comp][row].pop().expect("recorded cell is a corner");
        if ins[comp][row].is_empty() {
            ins[comp].pop();
        }
        while row > 0 {
            row -= 1;
            let line = &mut ins[comp][row];
            let p = line.iter().rposition(|&y| y < x).expect("row above holds a smaller entry");
            x = std::mem::replace(&mut line[p], x);
        }
        images[j - 1] = x as usize;
        colors[j - 1] = comp as u32;
    }
    ColoredPermutation::new(insertion.shape().r() as u32, images, colors)
}
