#include <gtest/gtest.h>

#include "gmd/wire.hpp"
#include "test_support.hpp"

namespace gmd::wire {
namespace {

using testing::read_file;

std::string corpus(const std::string& name) { return read_file(testing::source_dir() / "protocol/corpus" / name); }

ProtocolErrorCode decode_query_error(std::string_view xml)
{
    try {
        decode_query(xml);
    } catch (const ProtocolError& e) {
        return e.code();
    }
    ADD_FAILURE() << "no ProtocolError for " << xml;
    return ProtocolErrorCode::MalformedXml;
}

ProtocolErrorCode decode_response_error(std::string_view xml)
{
    try {
        decode_response(xml);
    } catch (const ProtocolError& e) {
        return e.code();
    }
    ADD_FAILURE() << "no ProtocolError for " << xml;
    return ProtocolErrorCode::MalformedXml;
}

TEST(EncodeQueryTest, SingleTypeConstraint)
{
    QueryMessage q;
    q.service_type = "CPU service";
    EXPECT_EQ(encode_query(q), "<query_service><service_type>CPU service</service_type></query_service>");
}

TEST(EncodeQueryTest, EmptyQuery) { EXPECT_EQ(encode_query({}), "<query_service/>"); }

TEST(EncodeQueryTest, FixedChildOrder)
{
    QueryMessage q;
    q.provider_name = "p";
    q.service_type = "t";
    EXPECT_EQ(encode_query(q), "<query_service><service_type>t</service_type><provider_name>p</provider_name></query_service>");

    q.service_name = "n";
    q.host_name = "h";
    q.detail = Detail::Contact;
    EXPECT_EQ(encode_query(q), "<query_service><service_type>t</service_type><provider_name>p</provider_name>"
                               "<host_name>h</host_name><service_name>n</service_name><detail>contact</detail>"
                               "</query_service>");
}

TEST(EncodeQueryTest, EscapesText)
{
    QueryMessage q;
    q.provider_name = "A&B <x>";
    q.service_type = "";
    EXPECT_EQ(encode_query(q),
              "<query_service><service_type/><provider_name>A&amp;B &lt;x&gt;</provider_name></query_service>");
}

TEST(DecodeQueryTest, IndentedCpuQuery)
{
    const auto q = decode_query(corpus("query_cpu_service.xml"));
    QueryMessage expected;
    expected.service_type = "CPU service";
    EXPECT_EQ(q, expected);
}

TEST(DecodeQueryTest, TwoConstraintExample)
{
    const auto q = decode_query(corpus("query_two_constraints.xml"));
    EXPECT_EQ(q.service_type, "...");
    EXPECT_EQ(q.provider_name, "...");
    EXPECT_FALSE(q.host_name);
    EXPECT_FALSE(q.service_name);
}

TEST(DecodeQueryTest, AcceptsAnyChildOrder)
{
    const auto q = decode_query("<query_service>\n <detail>contact</detail><provider_name>p</provider_name>"
                                "<service_type>t</service_type></query_service>");
    EXPECT_EQ(q.service_type, "t");
    EXPECT_EQ(q.provider_name, "p");
    EXPECT_EQ(q.detail, Detail::Contact);
}

TEST(DecodeQueryTest, Errors)
{
    EXPECT_EQ(decode_query_error("<query><x/></query>"), ProtocolErrorCode::UnknownRoot);
    EXPECT_EQ(decode_query_error("<query_service><service_type>a</service_type><service_type>b</service_type>"
                                 "</query_service>"),
              ProtocolErrorCode::DuplicateConstraint);
    EXPECT_EQ(decode_query_error("<query_service><price/></query_service>"), ProtocolErrorCode::UnknownElement);
    EXPECT_EQ(decode_query_error("<query_service><service_type>a</query_service>"), ProtocolErrorCode::MalformedXml);
    EXPECT_EQ(decode_query_error(""), ProtocolErrorCode::MalformedXml);
    EXPECT_EQ(decode_query_error("<query_service>text</query_service>"), ProtocolErrorCode::MalformedXml);
    EXPECT_EQ(decode_query_error("<query_service><detail>brief</detail></query_service>"), ProtocolErrorCode::MalformedXml);
    EXPECT_EQ(decode_query_error("<!DOCTYPE q [<!ENTITY x \"y\">]><query_service/>"), ProtocolErrorCode::MalformedXml);
    EXPECT_EQ(decode_query_error("<query_service><service_type><b/></service_type></query_service>"),
              ProtocolErrorCode::MalformedXml);
}

ServiceRecord manjra()
{
    ServiceRecord r;
    r.name = "manjra-cpu";
    r.provider = "Melbourne GRIDS Lab";
    r.price = PriceQuote{Decimal::parse("2"), Decimal::parse("0")};
    r.address = "manjra.cs.mu.oz.au";
    r.description = "Linux cluster";
    return r;
}

TEST(EncodeResponseTest, OkWithOneService)
{
    EXPECT_EQ(encode_response(QueryResponse::ok("CPU service", {manjra()})),
              "<?xml version=\"1.0\" encoding=\"UTF-8\"?>"
              "<service-details type=\"CPU service\" status=\"ok\"><service><name>manjra-cpu</name>"
              "<provider>Melbourne GRIDS Lab</provider><price><hardware>2</hardware><software>0</software></price>"
              "<address>manjra.cs.mu.oz.au</address><description>Linux cluster</description></service>"
              "</service-details>");
}

TEST(EncodeResponseTest, ErrorForm)
{
    EXPECT_EQ(encode_response(QueryResponse::error("Crash Simulation", "no such type")),
              "<?xml version=\"1.0\" encoding=\"UTF-8\"?>"
              "<service-details type=\"Crash Simulation\" status=\"error\"><reason>no such type</reason>"
              "</service-details>");
}

TEST(EncodeResponseTest, EmptyResultIsOk)
{
    EXPECT_EQ(encode_response(QueryResponse::ok("*", {})),
              "<?xml version=\"1.0\" encoding=\"UTF-8\"?><service-details type=\"*\" status=\"ok\"/>");
}

TEST(EncodeResponseTest, ContactRecordsCarryNameAndAddressOnly)
{
    ServiceRecord r;
    r.name = "n";
    r.address = "h";
    EXPECT_EQ(encode_response(QueryResponse::ok("t", {r})),
              "<?xml version=\"1.0\" encoding=\"UTF-8\"?><service-details type=\"t\" status=\"ok\">"
              "<service><name>n</name><address>h</address></service></service-details>");
}

TEST(EncodeResponseTest, EscapesAttribute)
{
    const auto xml = encode_response(QueryResponse::ok("a\"b&c<d>\te", {}));
    EXPECT_NE(xml.find("type=\"a&quot;b&amp;c&lt;d&gt;&#9;e\""), std::string::npos) << xml;
    EXPECT_EQ(decode_response(xml).type_label, "a\"b&c<d>\te");
}

TEST(DecodeResponseTest, Errors)
{
    EXPECT_EQ(decode_response_error("<service-details type=\"t\"/>"), ProtocolErrorCode::MissingStatus);
    EXPECT_EQ(decode_response_error("<service-details type=\"t\" status=\"maybe\"/>"), ProtocolErrorCode::MissingStatus);
    EXPECT_EQ(decode_response_error("<service-details type=\"t\" status=\"ok\"><service><name>n</name>"
                                    "<price><hardware>cheap</hardware><software>0</software></price>"
                                    "<address>a</address></service></service-details>"),
              ProtocolErrorCode::BadPrice);
    EXPECT_EQ(decode_response_error("<service-details type=\"t\" status=\"ok\"><service><name>n</name>"
                                    "<price><hardware>-1</hardware><software>0</software></price>"
                                    "<address>a</address></service></service-details>"),
              ProtocolErrorCode::BadPrice);
    EXPECT_EQ(decode_response_error("<service-details type=\"t\" status=\"ok\"><service><name>n</name>"
                                    "<price><hardware>1</hardware></price><address>a</address></service>"
                                    "</service-details>"),
              ProtocolErrorCode::BadPrice);
    EXPECT_EQ(decode_response_error("<services status=\"ok\"/>"), ProtocolErrorCode::UnknownRoot);
    EXPECT_EQ(decode_response_error("<service-details type=\"t\" status=\"ok\"><item/></service-details>"),
              ProtocolErrorCode::UnknownElement);
    EXPECT_EQ(decode_response_error("<service-details type=\"t\" status=\"ok\"><service><name>n</name></service>"
                                    "</service-details>"),
              ProtocolErrorCode::MalformedXml);
    EXPECT_EQ(decode_response_error("<service-details type=\"t\" status=\"error\"/>"), ProtocolErrorCode::MalformedXml);
    EXPECT_EQ(decode_response_error("<service-details status=\"ok\""), ProtocolErrorCode::MalformedXml);
}

TEST(GoldenCorpusTest, CorpusMessagesReencodeCanonically)
{
    for (const char* name : {"query_cpu_service", "query_two_constraints"}) {
        const auto q = decode_query(corpus(std::string(name) + ".xml"));
        EXPECT_EQ(encode_query(q), corpus(std::string(name) + ".canonical.xml")) << name;
    }
    for (const char* name : {"response_ok", "response_error"}) {
        const auto r = decode_response(corpus(std::string(name) + ".xml"));
        EXPECT_EQ(encode_response(r), corpus(std::string(name) + ".canonical.xml")) << name;
    }
}

TEST(GoldenCorpusTest, ResponseShapes)
{
    const auto ok = decode_response(corpus("response_ok.xml"));
    EXPECT_EQ(ok.status, Status::Ok);
    EXPECT_EQ(ok.type_label, "CPU service");
    ASSERT_EQ(ok.services.size(), 2u);
    EXPECT_EQ(ok.services[1].price->hardware.to_string(), "1.5");

    const auto err = decode_response(corpus("response_error.xml"));
    EXPECT_EQ(err.status, Status::Error);
    EXPECT_EQ(err.reason, "...");
    EXPECT_TRUE(err.services.empty());
}

TEST(RoundTripProperty, Queries)
{
    testing::Gen gen(2024);
    for (int i = 0; i < 1500; ++i) {
        const auto q = gen.query();
        const auto xml = encode_query(q);
        ASSERT_EQ(decode_query(xml), q) << xml;
        ASSERT_EQ(encode_query(q), xml);
    }
}

TEST(RoundTripProperty, Responses)
{
    testing::Gen gen(4048);
    for (int i = 0; i < 1500; ++i) {
        const auto r = gen.response();
        const auto xml = encode_response(r);
        ASSERT_EQ(decode_response(xml), r) << xml;
        ASSERT_EQ(encode_response(r), xml);
    }
}

TEST(SoapTest, WrapAndUnwrapAreInverse)
{
    const std::string bare = encode_response(QueryResponse::ok("CPU service", {manjra()}));
    const std::string wrapped = soap_wrap(bare);
    EXPECT_TRUE(wrapped.starts_with(std::string(kXmlDeclaration) + "<soap:Envelope"));
    EXPECT_EQ(wrapped.find(kXmlDeclaration, 1), std::string::npos);
    EXPECT_EQ(soap_unwrap(wrapped, true), bare);

    QueryMessage q;
    q.service_type = "a & b";
    EXPECT_EQ(soap_unwrap(soap_wrap(encode_query(q)), false), encode_query(q));
}

TEST(SoapTest, ForeignPrefixesAndWhitespace)
{
    const std::string doc = "<?xml version=\"1.0\"?>\n<env:Envelope xmlns:env=\"http://schemas.xmlsoap.org/soap/envelope/\">\n"
                            "  <env:Header/>\n  <env:Body>\n    <query_service><host_name>h</host_name></query_service>\n"
                            "  </env:Body>\n</env:Envelope>\n";
    const auto inner = soap_unwrap(doc, false);
    ASSERT_TRUE(inner);
    EXPECT_EQ(decode_query(*inner).host_name, "h");
}

TEST(SoapTest, NonEnvelopeAndBrokenEnvelope)
{
    EXPECT_EQ(soap_unwrap("<query_service/>", false), std::nullopt);
    EXPECT_THROW(soap_unwrap("<soap:Envelope xmlns:soap=\"x\"/>", false), ProtocolError);
    EXPECT_THROW(soap_unwrap("<soap:Envelope xmlns:soap=\"x\"><soap:Body><a/><b/></soap:Body></soap:Envelope>", false),
                 ProtocolError);
}

}  // namespace
}  // namespace gmd::wire
