#include <gtest/gtest.h>

#include "gmd/model.hpp"
#include "gmd/wire.hpp"
#include "test_support.hpp"

namespace gmd {
namespace {

TEST(DecimalTest, CanonicalFormsRoundTrip)
{
    for (const char* text : {"0", "2", "2.5", "0.0001", "10", "1234.5678", "99999999999999.9999"}) {
        EXPECT_EQ(Decimal::parse(text).to_string(), text);
    }
}

TEST(DecimalTest, NonCanonicalInputIsNormalized)
{
    EXPECT_EQ(Decimal::parse("02").to_string(), "2");
    EXPECT_EQ(Decimal::parse("2.50").to_string(), "2.5");
    EXPECT_EQ(Decimal::parse("0.0000").to_string(), "0");
    EXPECT_EQ(Decimal::parse("-0").to_string(), "0");
    EXPECT_EQ(Decimal::parse("1.5"), Decimal::parse("1.5000"));
}

TEST(DecimalTest, UnitsAreExact)
{
    EXPECT_EQ(Decimal::parse("0.0001").units(), 1);
    EXPECT_EQ(Decimal::parse("2.5").units(), 25000);
    EXPECT_EQ(Decimal::parse("1234.5678").units(), 12345678);
    EXPECT_LT(Decimal::parse("0.1"), Decimal::parse("0.11"));
}

TEST(DecimalTest, RejectsMalformedText)
{
    for (const char* text : {"", ".", "1.", ".5", "+1", "1e3", "1,5", " 1", "1.23456", "abc", "1.2.3", "--1",
                             "123456789012345"}) {
        EXPECT_THROW(Decimal::parse(text), MalformedDecimal) << '"' << text << '"';
    }
}

TEST(DecimalTest, RejectsNegatives)
{
    EXPECT_THROW(Decimal::parse("-1"), NegativeDecimal);
    EXPECT_THROW(Decimal::parse("-0.0001"), NegativeDecimal);
    EXPECT_THROW(Decimal::from_units(-1), NegativeDecimal);
}

TEST(DecimalTest, FormatParseIdentityProperty)
{
    testing::Gen gen(7);
    for (int i = 0; i < 2000; ++i) {
        const Decimal d = gen.decimal(std::int64_t{1} << 40);
        const std::string text = d.to_string();
        EXPECT_EQ(Decimal::parse(text), d);
        EXPECT_EQ(Decimal::parse(text).to_string(), text);
        if (text.find('.') != std::string::npos) {
            EXPECT_NE(text.back(), '0') << text;
        }
    }
}

ProviderInput provider_input(std::string name, std::string login, std::string contact)
{
    return ProviderInput{std::move(name), std::move(login), "$argon2id$digest", std::move(contact), ""};
}

TEST(ValidateProviderTest, AcceptsWellFormedProvider)
{
    const auto p = validate_provider(provider_input("World Wide Grid, Inc.", "wwg", "Melbourne AU"));
    EXPECT_EQ(p.provider_name, "World Wide Grid, Inc.");
    EXPECT_EQ(p.login_name, "wwg");
    EXPECT_EQ(p.contact_address, "Melbourne AU");
}

TEST(ValidateProviderTest, EmptyNameIsRejected)
{
    try {
        validate_provider(provider_input("", "x", "addr"));
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.errors(), (std::vector<FieldError>{{FieldRule::EmptyField, "provider_name"}}));
    }
}

TEST(ValidateProviderTest, FieldsAreTrimmed)
{
    const auto p = validate_provider(provider_input("  Acme  ", "acme", "a"));
    EXPECT_EQ(p.provider_name, "Acme");
}

TEST(ValidateProviderTest, ReportsEveryViolation)
{
    try {
        validate_provider(ProviderInput{" ", "", "", "", "bad\x01"});
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_TRUE(e.has(FieldRule::EmptyField, "provider_name"));
        EXPECT_TRUE(e.has(FieldRule::EmptyField, "login_name"));
        EXPECT_TRUE(e.has(FieldRule::EmptyField, "password_digest"));
        EXPECT_TRUE(e.has(FieldRule::EmptyField, "contact_address"));
        EXPECT_TRUE(e.has(FieldRule::InvalidCharacter, "extra_info"));
        EXPECT_EQ(e.errors().size(), 5u);
    }
}

ServiceInput manjra()
{
    ServiceInput s;
    s.service_name = "manjra-cpu";
    s.service_type = "CPU service";
    s.provider_name = "Melbourne GRIDS Lab";
    s.host_name = "manjra.cs.mu.oz.au";
    s.hardware_price = "2";
    s.software_price = "0";
    return s;
}

TEST(ValidateServiceTest, AcceptsCpuService)
{
    const auto s = validate_service(manjra());
    EXPECT_EQ(s.service_type, "CPU service");
    EXPECT_EQ(s.application_path, "");
    EXPECT_EQ(s.price.hardware, Decimal::parse("2"));
    EXPECT_EQ(s.price.software, Decimal::parse("0"));
}

TEST(ValidateServiceTest, NegativePriceIsRejected)
{
    auto in = manjra();
    in.hardware_price = "-1";
    try {
        validate_service(in);
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.errors(), (std::vector<FieldError>{{FieldRule::NegativePrice, "hardware"}}));
    }
}

TEST(ValidateServiceTest, FiveFractionalDigitsAreMalformed)
{
    auto in = manjra();
    in.hardware_price = "1.23456";
    try {
        validate_service(in);
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.errors(), (std::vector<FieldError>{{FieldRule::MalformedDecimal, "hardware"}}));
    }
}

TEST(ValidateServiceTest, RequiredFields)
{
    ServiceInput in;
    in.hardware_price = "x";
    in.software_price = "-2";
    try {
        validate_service(in);
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        for (const char* field : {"service_name", "service_type", "provider_name", "host_name"}) {
            EXPECT_TRUE(e.has(FieldRule::EmptyField, field)) << field;
        }
        EXPECT_TRUE(e.has(FieldRule::MalformedDecimal, "hardware"));
        EXPECT_TRUE(e.has(FieldRule::NegativePrice, "software"));
    }
}

TEST(XmlSafeTextTest, AcceptsUtf8AndRejectsControls)
{
    EXPECT_TRUE(is_xml_safe("plain & <special> \"text\"\t\n"));
    EXPECT_TRUE(is_xml_safe("\xC3\xA9\xE6\x97\xA5\xF0\x9F\x9A\x80"));
    EXPECT_FALSE(is_xml_safe(std::string("nul\0", 4)));
    EXPECT_FALSE(is_xml_safe("bell\x07"));
    EXPECT_FALSE(is_xml_safe("\xC3"));          // truncated
    EXPECT_FALSE(is_xml_safe("\xC0\xAF"));      // overlong
    EXPECT_FALSE(is_xml_safe("\xED\xA0\x80"));  // surrogate
    EXPECT_FALSE(is_xml_safe("\xFF"));
}

TEST(ServiceRecordTest, ProjectionCarriesResponseFieldsOnly)
{
    const auto s = validate_service(manjra());
    const auto r = to_record(s);
    EXPECT_EQ(r.name, s.service_name);
    EXPECT_EQ(r.address, s.host_name);
    EXPECT_EQ(r.provider, s.provider_name);
    EXPECT_EQ(r.price, s.price);
    EXPECT_EQ(r.description, s.description);
    EXPECT_FALSE(r.is_contact_only());

    const auto c = to_contact_record(s);
    EXPECT_TRUE(c.is_contact_only());
    EXPECT_EQ(c.name, s.service_name);
    EXPECT_EQ(c.address, s.host_name);
}

TEST(ServiceRecordTest, ProjectionSurvivesTheWire)
{
    testing::Gen gen(11);
    testing::Vocabulary vocab;
    for (int i = 0; i < 300; ++i) {
        Service s = testing::make_service(gen, vocab, "Provider " + std::to_string(i % 4));
        s.description = gen.wire_text(20);
        const auto record = to_record(s);
        const auto back = wire::decode_response(wire::encode_response(wire::QueryResponse::ok("t", {record})));
        ASSERT_EQ(back.services.size(), 1u);
        const auto& r = back.services.front();
        EXPECT_EQ(r.name, s.service_name);
        EXPECT_EQ(r.provider, s.provider_name);
        EXPECT_EQ(r.price, s.price);
        EXPECT_EQ(r.address, s.host_name);
        EXPECT_EQ(r.description, s.description);
    }
}

}  // namespace
}  // namespace gmd
