class Example<A, B extends Some<? super B>> extends Base implements I, J {
    int x;
    // a comment
    Base<A> y;
}
