class A {
    int x ;

}
