use std::fmt::Debug;

/// A field given as a context object; elements carry no reference to it.
pub trait Field: Clone + Debug {
    type Element: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Element;
    fn one(&self) -> Self::Element;
    fn is_zero(&self, a: &Self::Element) -> bool;
    fn add(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn neg(&self, a: &Self::Element) -> Self::Element;
    fn mul(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    /// `None` for zero.
    fn inv(&self, a: &Self::Element) -> Option<Self::Element>;
    fn characteristic(&self) -> u32;

    fn sub(&self, a: &Self::Element, b: &Self::Element) -> Self::Element {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Element) -> bool {
        *a == self.one()
    }

    fn from_int(&self, n: i64) -> Self::Element {
        let p = self.characteristic() as i64;
        let mut r = n.rem_euclid(p);
        let mut acc = self.zero();
        let one = self.one();
        while r > 0 {
            acc = self.add(&acc, &one);
            r -= 1;
        }
        acc
    }

    fn pow(&self, a: &Self::Element, mut e: u64) -> Self::Element {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}
