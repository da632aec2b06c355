#include <gtest/gtest.h>

#include "gmd/gqws.hpp"
#include "gmd/store_json.hpp"
#include "test_support.hpp"

namespace gmd::gqws {
namespace {

using testing::expected_response;
using wire::Detail;
using wire::QueryMessage;

std::string store_digest(const Repository& repo) { return encode_store(repo.snapshot()); }

struct Loaded {
    testing::RandomStore store;
    Repository repo;
    QueryProcessor processor{repo};

    explicit Loaded(testing::RandomStore s) : store(std::move(s)) { testing::load(repo, store); }
};

TEST(ClassifyTest, EachShapeMapsToOneKind)
{
    for (QueryKind kind : kAllKinds) EXPECT_EQ(classify(make_query(kind, "x")), kind) << method_name(kind);

    QueryMessage combined;
    combined.service_type = "t";
    combined.provider_name = "p";
    EXPECT_EQ(classify(combined), std::nullopt);

    QueryMessage contact_by_host;
    contact_by_host.host_name = "h";
    contact_by_host.detail = Detail::Contact;
    EXPECT_EQ(classify(contact_by_host), std::nullopt);

    QueryMessage contact_all;
    contact_all.detail = Detail::Contact;
    EXPECT_EQ(classify(contact_all), std::nullopt);
}

TEST(ClassifyTest, PureFunctionOfPresentConstraints)
{
    // Oracle: a table keyed by the presence bitmask.
    testing::Gen gen(17);
    for (int i = 0; i < 2000; ++i) {
        const auto q = gen.query();
        const int mask = (q.service_type ? 1 : 0) | (q.provider_name ? 2 : 0) | (q.host_name ? 4 : 0) |
                         (q.service_name ? 8 : 0);
        const bool contact = q.detail == Detail::Contact;
        std::optional<QueryKind> expected;
        if (!contact) {
            switch (mask) {
            case 0: expected = QueryKind::All; break;
            case 1: expected = QueryKind::ByType; break;
            case 2: expected = QueryKind::ByProvider; break;
            case 4: expected = QueryKind::ByHost; break;
            case 8: expected = QueryKind::PriceByName; break;
            default: break;
            }
        } else if (mask == 1) {
            expected = QueryKind::ContactByType;
        }
        ASSERT_EQ(classify(q), expected);
    }
}

TEST(ClassifyTest, MethodNames)
{
    EXPECT_STREQ(method_name(QueryKind::All), "QueryService");
    EXPECT_STREQ(method_name(QueryKind::ByType), "QueryServiceByType");
    EXPECT_STREQ(method_name(QueryKind::ByHost), "QueryServiceByHost");
    EXPECT_STREQ(method_name(QueryKind::ByProvider), "QueryServiceByProvider");
    EXPECT_STREQ(method_name(QueryKind::ContactByType), "QueryServiceContact");
    EXPECT_STREQ(method_name(QueryKind::PriceByName), "QueryPrice");
}

TEST(QueryProcessorTest, EmptyRegistry)
{
    Repository repo;
    QueryProcessor p(repo);
    const auto r = p.query_service();
    EXPECT_EQ(r.status, wire::Status::Ok);
    EXPECT_EQ(r.type_label, "*");
    EXPECT_TRUE(r.services.empty());
    EXPECT_EQ(p.query_service_by_type("CPU service").services.size(), 0u);
}

TEST(QueryProcessorTest, FixtureQueries)
{
    Loaded f(testing::fixture_store());
    const auto& all = f.store.services;
    ASSERT_EQ(all.size(), 12u);

    const auto everything = f.processor.query_service();
    EXPECT_EQ(everything, expected_response(all, make_query(QueryKind::All)));
    EXPECT_EQ(everything.services.size(), 12u);

    const auto cpu = f.processor.query_service_by_type("CPU service");
    EXPECT_EQ(cpu, expected_response(all, make_query(QueryKind::ByType, "CPU service")));
    EXPECT_EQ(cpu.services.size(), 4u);
    EXPECT_EQ(cpu.type_label, "CPU service");

    const auto crash = f.processor.query_service_by_type("Crash Simulation");
    EXPECT_EQ(crash.services.size(), 3u);
    for (const auto& s : crash.services) EXPECT_TRUE(s.name.starts_with("crash-"));

    EXPECT_TRUE(f.processor.query_service_by_type("Weather").services.empty());

    const auto manjra = f.processor.query_service_by_host("manjra.cs.mu.oz.au");
    EXPECT_EQ(manjra.services.size(), 2u);
    EXPECT_EQ(manjra, expected_response(all, make_query(QueryKind::ByHost, "manjra.cs.mu.oz.au")));
    EXPECT_TRUE(f.processor.query_service_by_host("nowhere").services.empty());

    const auto wwg = f.processor.query_service_by_provider("World Wide Grid, Inc.");
    EXPECT_EQ(wwg.services.size(), 3u);
    for (const auto& s : wwg.services) {
        EXPECT_NE(std::find(everything.services.begin(), everything.services.end(), s), everything.services.end());
    }

    const auto contact = f.processor.query_service_contact("CPU service");
    EXPECT_EQ(contact.services.size(), cpu.services.size());
    for (const auto& s : contact.services) EXPECT_TRUE(s.is_contact_only());
    const auto contact_xml = wire::encode_response(contact);
    EXPECT_EQ(contact_xml.find("<provider>"), std::string::npos);
    EXPECT_EQ(contact_xml.find("<price>"), std::string::npos);
    EXPECT_EQ(contact_xml.find("<description"), std::string::npos);

    const auto one = f.processor.query_price("wwg-cpu");
    ASSERT_EQ(one.services.size(), 1u);
    EXPECT_EQ(one.services[0].price->hardware.to_string(), "1.5");
    EXPECT_EQ(one.services[0].price->software.to_string(), "3");

    EXPECT_EQ(f.processor.query_price("docking").services.size(), 2u);

    const auto missing = f.processor.query_price("nosuch");
    EXPECT_EQ(missing.status, wire::Status::Error);
    EXPECT_NE(missing.reason.find("nosuch"), std::string::npos);
}

TEST(QueryProcessorTest, ResultsSortedByProviderThenName)
{
    Loaded f(testing::fixture_store());
    const auto r = f.processor.query_service();
    for (std::size_t i = 1; i < r.services.size(); ++i) {
        const auto& a = r.services[i - 1];
        const auto& b = r.services[i];
        EXPECT_TRUE(std::tie(*a.provider, a.name) < std::tie(*b.provider, b.name));
    }
}

QueryMessage random_query(testing::Gen& gen, const testing::Vocabulary& v)
{
    auto value = [&](const std::vector<std::string>& pool) {
        return gen.coin(0.9) ? gen.pick(pool) : std::string("unknown");
    };
    if (gen.coin(0.6)) {
        const QueryKind kind = kAllKinds[gen.uniform(0, 5)];
        switch (kind) {
        case QueryKind::All: return make_query(kind);
        case QueryKind::ByType:
        case QueryKind::ContactByType: return make_query(kind, value(v.types));
        case QueryKind::ByHost: return make_query(kind, value(v.hosts));
        case QueryKind::ByProvider: return make_query(kind, value(v.providers));
        case QueryKind::PriceByName: return make_query(kind, value(v.names));
        }
    }
    QueryMessage q;
    if (gen.coin()) q.service_type = value(v.types);
    if (gen.coin()) q.provider_name = value(v.providers);
    if (gen.coin()) q.host_name = value(v.hosts);
    if (gen.coin()) q.service_name = value(v.names);
    if (gen.coin(0.3)) q.detail = Detail::Contact;
    return q;
}

TEST(QueryOracleProperty, MatchesScanOnRandomStores)
{
    testing::Gen gen(99);
    const testing::Vocabulary v;
    int cases = 0;
    for (int trial = 0; trial < 60; ++trial) {
        Loaded f(testing::random_store(gen, v));
        const auto before = store_digest(f.repo);
        for (int i = 0; i < 20; ++i, ++cases) {
            const auto q = random_query(gen, v);
            ASSERT_EQ(f.processor.execute(q), expected_response(f.store.services, q)) << wire::encode_query(q);
        }
        ASSERT_EQ(store_digest(f.repo), before);
    }
    EXPECT_GE(cases, 1000);
}

TEST(QueryOracleProperty, NamedMethodsAgreeWithExecute)
{
    testing::Gen gen(5);
    const testing::Vocabulary v;
    for (int trial = 0; trial < 30; ++trial) {
        Loaded f(testing::random_store(gen, v));
        const auto& all = f.store.services;
        const auto t = gen.pick(v.types);
        const auto h = gen.pick(v.hosts);
        const auto p = gen.pick(v.providers);
        const auto n = gen.pick(v.names);
        EXPECT_EQ(f.processor.query_service(), expected_response(all, make_query(QueryKind::All)));
        EXPECT_EQ(f.processor.query_service_by_type(t), expected_response(all, make_query(QueryKind::ByType, t)));
        EXPECT_EQ(f.processor.query_service_by_host(h), expected_response(all, make_query(QueryKind::ByHost, h)));
        EXPECT_EQ(f.processor.query_service_by_provider(p),
                  expected_response(all, make_query(QueryKind::ByProvider, p)));
        EXPECT_EQ(f.processor.query_service_contact(t),
                  expected_response(all, make_query(QueryKind::ContactByType, t)));
        EXPECT_EQ(f.processor.query_price(n), expected_response(all, make_query(QueryKind::PriceByName, n)));
    }
}

TEST(HandleQueryTest, CpuQueryOverBareAndSoap)
{
    Loaded f(testing::fixture_store());
    const auto body = testing::read_file(testing::source_dir() / "protocol/corpus/query_cpu_service.xml");
    const auto bare = f.processor.handle_query(body, Envelope::Bare);
    EXPECT_EQ(bare.http_status, 200);
    EXPECT_EQ(wire::decode_response(bare.body),
              expected_response(f.store.services, make_query(QueryKind::ByType, "CPU service")));

    const auto soap = f.processor.handle_query(wire::soap_wrap(body), Envelope::Soap);
    EXPECT_EQ(soap.http_status, 200);
    EXPECT_EQ(wire::soap_unwrap(soap.body, true), bare.body);

    // Sniffing picks the same envelope.
    EXPECT_EQ(f.processor.handle_query(body).body, bare.body);
    EXPECT_EQ(f.processor.handle_query(wire::soap_wrap(body)).body, soap.body);
}

TEST(HandleQueryTest, EnvelopeTransparencyForEveryKind)
{
    Loaded f(testing::fixture_store());
    for (QueryKind kind : kAllKinds) {
        for (const char* arg : {"CPU service", "manjra.cs.mu.oz.au", "Osaka Cluster Group", "docking", "nosuch"}) {
            const auto inner = wire::encode_query(make_query(kind, arg));
            const auto bare = f.processor.handle_query(inner, Envelope::Bare);
            const auto soap = f.processor.handle_query(wire::soap_wrap(inner), Envelope::Soap);
            EXPECT_EQ(bare.http_status, soap.http_status);
            EXPECT_EQ(wire::soap_unwrap(soap.body, true), bare.body) << method_name(kind) << " " << arg;
        }
    }
}

TEST(HandleQueryTest, MalformedBodyIs400WithReason)
{
    Repository repo;
    QueryProcessor p(repo);
    for (const std::string body : {"<query_service>", "not xml", "<query><x/></query>",
                                   "<query_service><service_type>a</service_type><service_type>b</service_type>"
                                   "</query_service>"}) {
        const auto reply = p.handle_query(body, Envelope::Bare);
        EXPECT_EQ(reply.http_status, 400) << body;
        const auto r = wire::decode_response(reply.body);
        EXPECT_EQ(r.status, wire::Status::Error);
        EXPECT_FALSE(r.reason.empty());
    }
    const auto soap = p.handle_query(wire::soap_wrap("<query><x/></query>"), Envelope::Soap);
    EXPECT_EQ(soap.http_status, 400);
    ASSERT_TRUE(wire::soap_unwrap(soap.body, true));
    EXPECT_EQ(wire::decode_response(*wire::soap_unwrap(soap.body, true)).status, wire::Status::Error);

    // A bare body sent where SOAP was expected.
    EXPECT_EQ(p.handle_query("<query_service/>", Envelope::Soap).http_status, 400);
}

TEST(HandleQueryTest, UnknownPriceIsAnOkHttpReply)
{
    Repository repo;
    QueryProcessor p(repo);
    const auto reply = p.handle_query(wire::encode_query(make_query(QueryKind::PriceByName, "x")), Envelope::Bare);
    EXPECT_EQ(reply.http_status, 200);
    EXPECT_EQ(wire::decode_response(reply.body).status, wire::Status::Error);
}

}  // namespace
}  // namespace gmd::gqws
