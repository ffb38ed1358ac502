//! Closed-form rank-one Ext dimensions, used as an end-to-end oracle.
//!
//! In affine type A1 every KL polynomial is 1, so the whole Ext calculus
//! collapses to counting: writing X = l(x) and Y = l(y), the dimension of
//! Ext^n between the two simples is 1 exactly when a middle element z of
//! length (X+Y-n)/2 >= 1 exists with degrees a = X - l(z), b = Y - l(z)
//! splitting n. Nothing here touches the group table or the KL engine;
//! agreement with them is checked from the outside.
//!
//! The region deliberately excludes the line X+Y = n: the defining system
//! forces l(z) >= 1 there is no length-0 element in W+. (A literal reading
//! of the region figure would include that line; the closed form follows
//! the defining equations.)

/// A rank-one query: lengths of the two W+ elements and the degree.
#[derive(Clone, Copy, Debug)]
pub struct A1Query {
    /// l(x) >= 1.
    pub x_len: u32,
    /// l(y) >= 1.
    pub y_len: u32,
    pub n: u32,
}

/// The middle-element data certifying a nonzero dimension.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct A1Witness {
    /// Degree on the x side: a = (n + X - Y) / 2.
    pub a: u32,
    /// Degree on the y side: b = (n - X + Y) / 2.
    pub b: u32,
    /// l(z) = (X + Y - n) / 2.
    pub z_len: u32,
}

/// Membership in the nonvanishing region: |X-Y| <= n <= X+Y-2 with
/// X + Y = n mod 2.
pub fn a1_region(x_len: u32, y_len: u32, n: u32) -> bool {
    assert!(x_len >= 1 && y_len >= 1, "W+ lengths start at 1");
    let (x, y, n) = (x_len as i64, y_len as i64, n as i64);
    (x - y).abs() <= n && n <= x + y - 2 && (x + y - n) % 2 == 0
}

/// 0/1 dimension together with the witness for the nonzero case.
pub fn a1_ext_dim(q: A1Query) -> (u8, Option<A1Witness>) {
    if !a1_region(q.x_len, q.y_len, q.n) {
        return (0, None);
    }
    let (x, y, n) = (q.x_len as i64, q.y_len as i64, q.n as i64);
    let w = A1Witness {
        a: ((n + x - y) / 2) as u32,
        b: ((n - x + y) / 2) as u32,
        z_len: ((x + y - n) / 2) as u32,
    };
    debug_assert!(w.a + w.b == q.n && w.z_len >= 1);
    (1, Some(w))
}

/// Number of Y >= 1 with a nonzero dimension at (X, Y, n); min(X, n+1).
pub fn a1_sum_row(x_len: u32, n: u32) -> u64 {
    assert!(x_len >= 1);
    x_len.min(n + 1) as u64
}
