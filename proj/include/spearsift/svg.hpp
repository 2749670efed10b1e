#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace spearsift {

// Minimal static-SVG builder for the report plots. Deterministic output:
// coordinates are formatted with fixed precision.
class SvgWriter {
public:
    SvgWriter(double width, double height);

    void rect(double x, double y, double w, double h, const std::string& fill,
              const std::string& stroke = "none");
    void line(double x1, double y1, double x2, double y2, const std::string& stroke,
              double width = 1.0);
    void circle(double cx, double cy, double r, const std::string& fill);
    void text(double x, double y, const std::string& content, double size = 12.0,
              const std::string& anchor = "start");

    std::string str() const;
    void save(const std::filesystem::path& path) const;

private:
    double width_;
    double height_;
    std::string body_;
};

}  // namespace spearsift
