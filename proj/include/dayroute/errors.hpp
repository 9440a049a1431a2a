#pragma once

#include <stdexcept>
#include <string>

namespace dayroute {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public Error {
public:
  using Error::Error;
};

class MissingFile : public Error {
public:
  explicit MissingFile(const std::string& path)
      : Error("missing file: " + path), path(path) {}
  std::string path;
};

class ParseError : public Error {
public:
  ParseError(const std::string& file, long line, const std::string& detail)
      : Error(file + ":" + std::to_string(line) + ": " + detail),
        file(file), line(line) {}
  std::string file;
  long line;
};

class DuplicateId : public Error {
public:
  explicit DuplicateId(const std::string& id)
      : Error("duplicate id: " + id), id(id) {}
  std::string id;
};

class DanglingEndpoint : public Error {
public:
  DanglingEndpoint(const std::string& edge, const std::string& node)
      : Error("edge " + edge + " references unknown node " + node),
        edge(edge), node(node) {}
  std::string edge;
  std::string node;
};

class NonPositiveAttribute : public Error {
public:
  NonPositiveAttribute(const std::string& edge, const std::string& field)
      : Error("edge " + edge + ": " + field + " must be positive"),
        edge(edge), field(field) {}
  std::string edge;
  std::string field;
};

class UnknownNode : public Error {
public:
  explicit UnknownNode(const std::string& id)
      : Error("unknown node: " + id), id(id) {}
  std::string id;
};

class UnknownEdge : public Error {
public:
  explicit UnknownEdge(const std::string& id)
      : Error("unknown edge: " + id), id(id) {}
  std::string id;
};

class Unreachable : public Error {
public:
  Unreachable(const std::string& origin, const std::string& destination)
      : Error("no path from " + origin + " to " + destination),
        origin(origin), destination(destination) {}
  std::string origin;
  std::string destination;
};

class InsufficientRoutes : public Error {
public:
  InsufficientRoutes(const std::string& origin, const std::string& destination,
                     int found, int requested)
      : Error("only " + std::to_string(found) + " of " +
              std::to_string(requested) + " distinct routes found for " +
              origin + " -> " + destination),
        origin(origin), destination(destination), found(found),
        requested(requested) {}
  std::string origin;
  std::string destination;
  int found;
  int requested;
};

class NegativeDeparture : public Error {
public:
  explicit NegativeDeparture(long long agent)
      : Error("agent " + std::to_string(agent) + " has a negative departure time"),
        agent(agent) {}
  long long agent;
};

class EmptyRouteSet : public Error {
public:
  using Error::Error;
};

class InvalidRoute : public Error {
public:
  using Error::Error;
};

class InvalidChoice : public Error {
public:
  InvalidChoice(long long agent, int index)
      : Error("agent " + std::to_string(agent) + ": route index " +
              std::to_string(index) + " is out of range"),
        agent(agent), index(index) {}
  long long agent;
  int index;
};

class SimulationHorizonExceeded : public Error {
public:
  explicit SimulationHorizonExceeded(long long agent)
      : Error("agent " + std::to_string(agent) +
              " did not arrive within the simulation horizon"),
        agent(agent) {}
  long long agent;
};

class EmptyGroup : public Error {
public:
  explicit EmptyGroup(const std::string& group)
      : Error("reward term references empty group: " + group), group(group) {}
  std::string group;
};

class PhaseMissing : public Error {
public:
  explicit PhaseMissing(const std::string& phase)
      : Error("metric requires episodes from phase: " + phase), phase(phase) {}
  std::string phase;
};

/// Configuration problems: reported to CLI users as usage errors.
class ConfigError : public Error {
public:
  using Error::Error;
};

class UnknownConfigId : public ConfigError {
public:
  UnknownConfigId(const std::string& kind, const std::string& id)
      : ConfigError("no " + kind + " named '" + id + "'"), kind(kind), id(id) {}
  std::string kind;
  std::string id;
};

class UnknownNetwork : public ConfigError {
public:
  explicit UnknownNetwork(const std::string& name)
      : ConfigError("no network named '" + name + "'"), name(name) {}
  std::string name;
};

class SchemaError : public ConfigError {
public:
  SchemaError(const std::string& file, const std::string& detail)
      : ConfigError(file + ": " + detail), file(file) {}
  std::string file;
};

}  // namespace dayroute
