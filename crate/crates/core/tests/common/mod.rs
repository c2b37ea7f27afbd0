#![allow(dead_code)]

use matder::algcore::{Algebra, Bimodule, Element, Side};
use matder::Rational;

fn zero() -> Rational {
    Rational::from(0)
}

/// Rank by plain dense elimination, kept separate from the library kernel.
pub fn dense_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let p = rows[rank][col].clone();
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let factor = &rows[r][col] / &p;
                let pivot_row = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot_row) {
                    *x -= &factor * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Basis vectors, all pairwise sums and the unit.
pub fn spanning_set(a: &Algebra) -> Vec<Element> {
    let d = a.dim();
    let mut set: Vec<Element> = (0..d).map(|i| Element::basis(d, i)).collect();
    for i in 0..d {
        for j in i + 1..d {
            set.push(Element::basis(d, i).add(&Element::basis(d, j)));
        }
    }
    set.push(a.unit_element());
    set
}

/// Dimension of the space of maps `f` with `f(xy) = f(x) y + x f(y)` for
/// all `x, y` in the spanning set. Unknown `f(e_j)_q` sits at `j * m + q`.
pub fn brute_force_derivation_dim(a: &Algebra, m: &Bimodule) -> usize {
    let (d, md) = (a.dim(), m.dim());
    let set = spanning_set(a);
    let fb: Vec<Element> = (0..md).map(|p| Element::basis(md, p)).collect();
    let mut rows = Vec::new();
    for x in &set {
        for y in &set {
            let xy = a.multiply(x, y).unwrap();
            let mut block = vec![vec![zero(); d * md]; md];
            for j in 0..d {
                for q in 0..md {
                    // f(xy)_q
                    block[q][j * md + q] += &xy.coords[j];
                }
                for p in 0..md {
                    let right = m.act(Side::Right, y, &fb[p]).unwrap();
                    let left = m.act(Side::Left, x, &fb[p]).unwrap();
                    for q in 0..md {
                        // f(x) y and x f(y)
                        block[q][j * md + p] -= &x.coords[j] * &right.coords[q];
                        block[q][j * md + p] -= &y.coords[j] * &left.coords[q];
                    }
                }
            }
            rows.extend(block);
        }
    }
    d * md - dense_rank(rows)
}

/// Rank of `w -> (x -> w x - x w)`, evaluated on the algebra basis.
pub fn brute_force_inner_dim(a: &Algebra, m: &Bimodule) -> usize {
    let (d, md) = (a.dim(), m.dim());
    let mut columns = Vec::new();
    for p in 0..md {
        let w = Element::basis(md, p);
        let mut col = Vec::with_capacity(d * md);
        for j in 0..d {
            let e = Element::basis(d, j);
            let wx = m.act(Side::Right, &e, &w).unwrap();
            let xw = m.act(Side::Left, &e, &w).unwrap();
            col.extend(wx.sub(&xw).coords);
        }
        columns.push(col);
    }
    dense_rank(columns)
}

pub fn catalog_names() -> Vec<String> {
    let mut names: Vec<String> = matder::algcore::CATALOG_NAMES.iter().map(|s| s.to_string()).collect();
    names.push("direct_sum(field,field)".into());
    names
}
