#include "qcoh/p1.hpp"

namespace qcoh {

RingRepPtr p1_ringrep() {
    FinitePoset p({"u0", "u1", "u01"}, {{"u0", "u01"}, {"u1", "u01"}});
    std::vector<RingSpec> rings{RingSpec::poly("x"), RingSpec::ipoly("x"),
                                RingSpec::laurent("x")};
    return std::make_shared<RingRep>(p, rings);
}

DiagModule p1_twist(long n) {
    RingRepPtr rep = p1_ringrep();
    DiagModule m;
    m.rep = rep;
    for (std::size_t i = 0; i < 3; ++i) {
        FPModule f = FPModule::free(rep->ring(i), 1);
        f.grading = std::vector<long>{0};
        m.vertex.push_back(f);
    }
    std::size_t u0 = rep->poset.index("u0"), u1 = rep->poset.index("u1"),
                u01 = rep->poset.index("u01");
    // Grade of x^e times the generator is e plus the generator grade; the
    // transition x^n is then a degree-zero graded map.
    m.vertex[u1].grading = std::vector<long>{n};
    RingMatrix t0(rep->ring(u01), 1, 1), t1(rep->ring(u01), 1, 1);
    t0.at(0, 0) = RingElement(rep->ring(u01), Q(1));
    t1.at(0, 0) = RingElement::monomial(rep->ring(u01), n, Q(1));
    m.trans.insert({{u0, u01}, t0});
    m.trans.insert({{u1, u01}, t1});
    return m;
}

RingRepPtr p2_ringrep() {
    FinitePoset p({"u0", "u1", "u2", "u01", "u02", "u12", "u012"},
                  {{"u0", "u01"},
                   {"u0", "u02"},
                   {"u1", "u01"},
                   {"u1", "u12"},
                   {"u2", "u02"},
                   {"u2", "u12"},
                   {"u01", "u012"},
                   {"u02", "u012"},
                   {"u12", "u012"}});
    std::vector<RingSpec> rings{
        RingSpec::opaque("k[x1/x0, x2/x0]"),
        RingSpec::opaque("k[x0/x1, x2/x1]"),
        RingSpec::opaque("k[x0/x2, x1/x2]"),
        RingSpec::opaque("k[(x1/x0)^{+-1}, x2/x0]"),
        RingSpec::opaque("k[(x2/x0)^{+-1}, x1/x0]"),
        RingSpec::opaque("k[(x2/x1)^{+-1}, x0/x1]"),
        RingSpec::opaque("k[(x1/x0)^{+-1}, (x2/x0)^{+-1}]"),
    };
    return std::make_shared<RingRep>(p, rings);
}

} // namespace qcoh
