use core::fmt::Debug;

/// A Boolean algebra with decidable equality.
///
/// `element` enumerates the carrier (for countable algebras) and returns
/// `None` past the end of a finite one.
pub trait BooleanAlgebra {
    type Elem: Clone + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn complement(&self, a: &Self::Elem) -> Self::Elem;
    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    fn le(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.equal(&self.meet(a, b), a)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.equal(a, &self.zero())
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        self.equal(a, &self.one())
    }

    fn element(&self, i: usize) -> Option<Self::Elem>;

    /// Number of elements, when finite and representable.
    fn cardinality(&self) -> Option<u128>;

    fn name(&self) -> alloc::string::String;

    /// Human-readable form of an element.
    fn show(&self, a: &Self::Elem) -> alloc::string::String;
}
